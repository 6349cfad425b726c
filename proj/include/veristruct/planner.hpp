#pragma once

#include <string>

#include "veristruct/llm.hpp"
#include "veristruct/task.hpp"

namespace veristruct {

struct PlannerDecision {
    Plan plan;
    std::string rationale_text;  // model-provided, informational only
};

// Role description, module catalog, background, output-format instruction
// (with the three planning principles), plus the task's code and tests.
PromptBundle build_planner_prompt(const VerificationTask& task);

// Extracts the first bracketed module list, maps M1..M4 tokens, and
// normalizes (canonical order, dedup, M2 => M4). Throws PlanParseError when
// no bracketed list with at least one valid token exists.
Plan parse_plan(const std::string& response_text);

std::string render_plan(const Plan& plan);  // "[M1, M2, M3, M4]"

// One LLM invocation with a single sample. Unparseable output falls back to
// the full canonical plan: a superset plan at worst adds benign annotations,
// a dropped module cannot be recovered.
PlannerDecision exec_planner(const VerificationTask& task, const RunConfig& config,
                             Gateway& gateway);

}  // namespace veristruct
