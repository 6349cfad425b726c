#pragma once

#include <optional>
#include <string>
#include <vector>

#include "veristruct/generation.hpp"
#include "veristruct/llm.hpp"
#include "veristruct/task.hpp"
#include "veristruct/verifier.hpp"

namespace veristruct {

// One diagnostic-routed repair heuristic: message patterns plus the prompt
// skeleton (Objective / Relevant Background / Code with Error, and Tests /
// Instructions).
struct RepairRule {
    std::string id;  // "mode", "assertion", ..., "default"
    std::vector<std::string> patterns;  // regexes over the error message
    std::string objective_text;
    std::string background_text;
    std::vector<std::string> instruction_steps;
    std::string representative_actions;

    bool matches(const std::string& message) const;
};

// Twelve specialized rules plus the default fallback, ordered by the same
// priority as the diagnostic severity ranking.
const std::vector<RepairRule>& default_repair_registry();

// Data-driven override: JSON array of {id, patterns, objective, background,
// instructions, actions}.
std::vector<RepairRule> load_repair_registry(const std::filesystem::path& path);

// First rule (registry order) whose pattern matches the message; the default
// rule when none do. Total and deterministic.
const RepairRule& route_error(const VerifierError& error, const std::vector<RepairRule>& registry);

// Four sections, with the error message and location embedded in the code
// section. extra_instruction carries per-error additions such as the
// assertion rule's preceding-call hint.
PromptBundle build_repair_prompt(const RepairRule& rule, const CodeCandidate& candidate,
                                 const VerificationTask& task, const VerifierError& error,
                                 const std::string& extra_instruction = "");

// The module method invoked on the last line strictly before the assertion
// within the same test function; nullopt when no such call exists.
// module_method_names scopes the search to the data structure's own methods.
// Throws LocationOutOfRange when the line lies outside every function.
std::optional<std::string> locate_preceding_call(std::string_view test_source, int assertion_line,
                                                 const std::vector<std::string>& module_method_names);

enum class RepairStatus { Success, Failure };

struct RepairOutcome {
    RepairStatus status = RepairStatus::Failure;
    CodeCandidate final_candidate;
    int rounds_used = 0;
    std::vector<std::string> rule_trace;  // routed rule ids, in order
};

// Stage 2: up to max_repair_rounds iterations of verify, select the primary
// error, route it, and sample a fix with best-of selection. Semantic failure
// is a normal outcome.
RepairOutcome repair_annotations(const CodeCandidate& candidate, const VerificationTask& task,
                                 const RunConfig& config, const std::vector<RepairRule>& registry,
                                 Gateway& gateway, VerifierClient& verifier,
                                 const StageObserver& observe);

}  // namespace veristruct
