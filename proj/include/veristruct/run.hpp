#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "veristruct/llm.hpp"
#include "veristruct/repair.hpp"
#include "veristruct/task.hpp"

namespace veristruct {

// One point per LLM invocation: k is the invocation index, the count is the
// adopted candidate's verified functions at that moment. Dips are legal.
struct TrajectoryPoint {
    int k = 0;  // 1-based
    int verified = 0;
    std::string stage;

    bool operator==(const TrajectoryPoint&) const = default;
};

struct RunResult {
    std::string task_name;
    std::string mode = "workflow";  // or "baseline"
    bool solved = false;
    int verified_functions = 0;
    int total_functions = 0;
    int llm_invocations = 0;
    double elapsed_s = 0.0;  // 0 under replay: replay timings are not comparable
    std::string plan;        // "M1,M2,M3,M4", empty for baseline
    std::vector<TrajectoryPoint> trajectory;
    TokenUsage token_usage;
    std::vector<std::string> rule_trace;
    int repair_rounds = 0;
    std::string final_source;
};

struct PipelineEnv {
    Gateway& gateway;
    VerifierClient& verifier;
    const std::vector<RepairRule>& repair_registry;
};

// The outermost driver: generate annotations, then repair them, and package
// the outcome. Never mutates the task inputs.
RunResult verify_module(const VerificationTask& task, const RunConfig& config, PipelineEnv& env);

// Comparison baseline: one single-shot prompt per attempt carrying the code,
// the tests, and the previous failing code with its primary error. Stops
// early on success, otherwise runs the whole invocation budget.
RunResult run_baseline(const VerificationTask& task, int invocation_budget,
                       const RunConfig& config, PipelineEnv& env);

PromptBundle build_baseline_prompt(const VerificationTask& task, const CodeCandidate& previous,
                                   const std::optional<VerifierError>& previous_error);

// Writes <dir>/report.json and <dir>/final.rs. Lossless: parsing the document
// and emitting it again is byte-identical.
void emit_run_report(const RunResult& result, const std::filesystem::path& out_dir);

std::string run_result_to_json(const RunResult& result);
RunResult run_result_from_json(const std::string& text);

}  // namespace veristruct
