#include "veristruct/planner.hpp"

#include <regex>

#include "veristruct/errors.hpp"

namespace veristruct {

namespace {

constexpr const char* kPlannerSystem =
    "You are the planning agent of an automated Verus verification pipeline. You decide which "
    "annotation-generation modules a data-structure module needs before any annotation is "
    "written.";

const char* kModuleCatalog = R"(The available generation modules are:
  M1 (View): implements the View trait mapping the structure to its mathematical abstraction.
  M2 (Type Invariant): declares the #[verifier::type_invariant] property all instances satisfy.
  M3 (Specification): writes spec functions plus requires/ensures for every public method.
  M4 (Proof Blocks): adds proof blocks and loop invariants, bringing type invariants into scope.)";

const char* kPlannerBackground = R"(Verus verifies annotated Rust. A data-structure module is
verified jointly: its methods and its unit tests are proved against shared specifications.
A good plan runs only the modules whose annotations the structure actually needs; modules run
in dependency order M1, M2, M3, M4, and later modules build on the output of earlier ones.)";

const char* kPlannerInstructions = R"(Apply these principles:
1. Invoke M1 if the data structure can be represented by a sequence, set, or map.
2. Invoke M2 when non-trivial relationships exist among fields (e.g., range constraints or
   arithmetic relations).
3. If M2 is invoked, also execute M4 to add type invariants into the proof context.

Answer with the execution sequence as one bracketed list of module identifiers, for example
[M1, M2, M3, M4]. Emit the list exactly once.)";

}  // namespace

PromptBundle build_planner_prompt(const VerificationTask& task) {
    PromptBundle prompt;
    prompt.system_text = kPlannerSystem;
    prompt.module_tag = "planner";

    std::string code = "The module and its unit tests:\n```\n" + task.module_source;
    if (!task.module_source.empty() && task.module_source.back() != '\n') code += '\n';
    code += task.test_source;
    if (!task.test_source.empty() && task.test_source.back() != '\n') code += '\n';
    code += "```\n";

    prompt.user_sections = {
        {"Objective",
         "Select which of the four generation modules must run for the module below, and in "
         "what order."},
        {"Module Catalog", kModuleCatalog},
        {"Background", kPlannerBackground},
        {"Instructions", kPlannerInstructions},
        {"Code and Tests", code},
    };
    return prompt;
}

Plan parse_plan(const std::string& response_text) {
    static const std::regex bracketed(R"(\[([^\[\]]*)\])");

    auto begin = std::sregex_iterator(response_text.begin(), response_text.end(), bracketed);
    auto end = std::sregex_iterator();
    for (auto it = begin; it != end; ++it) {
        std::string body = (*it)[1].str();
        std::vector<ModuleId> ids;
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t comma = body.find(',', pos);
            std::string token = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
            if (auto id = module_id_from_token(token)) ids.push_back(*id);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (!ids.empty()) return normalize_plan(std::move(ids));
    }
    throw PlanParseError("no bracketed module list with a valid M1..M4 token");
}

std::string render_plan(const Plan& plan) {
    std::string out = "[";
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        if (i) out += ", ";
        out += to_string(plan.steps[i]);
    }
    out += "]";
    return out;
}

PlannerDecision exec_planner(const VerificationTask& task, const RunConfig& config,
                             Gateway& gateway) {
    (void)config;
    PromptBundle prompt = build_planner_prompt(task);
    std::vector<std::string> responses = gateway.complete(prompt, 1);

    PlannerDecision decision;
    decision.rationale_text = responses.front();
    try {
        decision.plan = parse_plan(responses.front());
    } catch (const PlanParseError&) {
        // A superset plan is safe; a dropped module is not.
        decision.plan = full_plan();
        decision.rationale_text += "\n[planner output unparseable; falling back to the full plan]";
    }
    return decision;
}

}  // namespace veristruct
