// Copyright 2026 The SmartSwitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "smartswitch/prompts.hpp"

#include <string>

namespace smartswitch {

namespace {

constexpr std::string_view kDeepenPrompt = R"PROMPT(Wait, this seems like a promising idea. Let's dive deeper into this reasoning path and not give up easily. Continue exploring this direction thoroughly.)PROMPT";

constexpr std::string_view kUniversalPrmTemplate = R"PROMPT(## System message
You are a helpful assistant.

## User query
{{question}}
The reference answer is: There is no reference answer for this question.

## Assistant response:
<Special-Token> <thought_1> <Special-Token>
<Special-Token> <thought_2> <Special-Token>
...
<Special-Token> <thought_n> <Special-Token>)PROMPT";

constexpr std::string_view kQwenPrmTemplate = R"PROMPT(## System message
Please reason step by step, and put your final answer within \boxed{}.

## User query
{{question}}

## Assistant response:
<Special-Token> <thought_1> <Special-Token>
<Special-Token> <thought_2> <Special-Token>
...
<Special-Token> <thought_n> <Special-Token>)PROMPT";

constexpr std::string_view kProcessDivisionPrompt = R"PROMPT(You are an expert in analyzing and decomposing complex problem-solving processes, especially in mathematics.

---

Task:

Your task is to divide a long and systematic thinking process (provided below) into coherent, sequential steps. Each step should represent a complete phase of reasoning, such as problem analysis, exploration, reassessment, or verification. Ensure **no content is omitted** between steps, and the entire process is covered from start to finish.

---

Output Format:
Present the steps in the following structured XML-like format:

```XML
<step number="step id">
    <objective> Purpose of this step </objective>
    <start> First exact sentence of this step in the given thinking process </start>
    <end> Last exact sentence of this step in the given thinking process </end>
</step>
```

---

Key Requirements:
1. **Continuity Preservation**:
   - The `end` sentence of step *i* must **immediately precede** the `start` sentence of step *i+1* in the original text.
   - No sentences should be skipped or omitted between steps.

2. **Complete Coverage**:
   - The last step's `end` must be the **very last sentence** of the entire thinking process.

3. **Step Objectives**:
   - Label each step's purpose clearly (e.g., "Initial analysis," "Error correction," "Explore different ideas").
   - For backtracking/reassessment, use objectives like "Re-evaluating approach due to X."

---

Strict Validation Rules:
1. **Text Continuity Check**:
   - For all steps except the last, the `end` of step *i* must be the **direct predecessor** of the `start` of step *i+1* in the original text.
   - Example: If step 1 ends with *"Now I'll try Method A,"* step 2 must start with the **very next sentence** in the original text (e.g., *"First, I apply Method A to the equation..."*).

2. **Final Step Coverage**:
   - The `end` of the final step **must match** the last sentence of the entire thinking process.

---

Instructions:
1. **Read the entire thinking process carefully**: Identify logical segments where the problem-solver shifts focus (e.g., from analyzing to solving or reflecting, or exploring, or summarizing).
2. **Define each step**: Assign a unique step number and describe its purpose (objective).
3. **Adjust step granularity adaptively**: Smaller steps for detailed reasoning, larger steps for broader phases.
4. **Extract the text**: Mark the exact beginning and ending sentences of each step in the original text.
5. **Ensure every sentence is included** in exactly one step, with no overlaps or gaps.
6. **Explicitly verify** the key requirements above before finalizing the output.

---

Thinking Process to Decompose (Input):
{{thinking_process}})PROMPT";

constexpr std::string_view kTipPromptTemplate = R"PROMPT(<context>
You are an expert math-solving assistant who prioritizes clear, concise solutions. You solve
problems in a single thought process, ensuring accuracy and efficiency. You seek clarification
when needed and respect user preferences even if they are unconventional.
</context>

<solving rules>
- Try to complete every idea you think of and don't give up halfway
- Don't skip steps
- Display solution process clearly
- Ask for clarification on ambiguity
</solving rules>

<format rules>
- Use equations and explanations for clarity
- Keep responses brief but complete
- Provide step-by-step reasoning if needed
</format rules>

PROBLEM: {{problem}}

OUTPUT: Following above rules to get the correct answer for PROBLEM. Focus on clear, concise
solutions while maintaining a helpful, accurate style.)PROMPT";

constexpr std::string_view kStandardPromptingInstruction =
    "Think step by step. Explore each idea thoroughly before moving on.";

constexpr std::string_view kPrmThoughtLines =
    "<Special-Token> <thought_1> <Special-Token>\n"
    "<Special-Token> <thought_2> <Special-Token>\n"
    "...\n"
    "<Special-Token> <thought_n> <Special-Token>";

std::string replace_all(std::string text, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

std::string render_prm(std::string_view tmpl, std::string_view question,
                       std::span<const std::string> steps, std::string_view special_token) {
  std::string body;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i > 0) body += '\n';
    body.append(special_token).append(" ").append(steps[i]).append(" ").append(special_token);
  }
  std::string out = replace_all(std::string(tmpl), kPrmThoughtLines, body);
  return replace_all(std::move(out), "{{question}}", question);
}

}  // namespace

std::string_view default_deepen_prompt() { return kDeepenPrompt; }
std::string_view universal_prm_template() { return kUniversalPrmTemplate; }
std::string_view qwen_prm_template() { return kQwenPrmTemplate; }
std::string_view process_division_prompt() { return kProcessDivisionPrompt; }
std::string_view tip_prompt_template() { return kTipPromptTemplate; }
std::string_view standard_prompting_instruction() { return kStandardPromptingInstruction; }

std::string render_universal_prm_prompt(std::string_view question,
                                        std::span<const std::string> steps,
                                        std::string_view special_token) {
  return render_prm(kUniversalPrmTemplate, question, steps, special_token);
}

std::string render_qwen_prm_prompt(std::string_view question, std::span<const std::string> steps,
                                   std::string_view special_token) {
  return render_prm(kQwenPrmTemplate, question, steps, special_token);
}

std::string render_tip_prompt(std::string_view problem) {
  return replace_all(std::string(kTipPromptTemplate), "{{problem}}", problem);
}

std::string render_prompt_template(std::string_view tmpl, std::string_view question) {
  return replace_all(std::string(tmpl), "{{question}}", question);
}

}  // namespace smartswitch
