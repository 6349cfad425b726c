#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "veristruct/run.hpp"

namespace veristruct {

struct ManifestEntry {
    std::string name;
    std::filesystem::path code_path;
    std::filesystem::path tests_path;
    int expected_functions = 0;
    std::filesystem::path scenario_path;           // scripted workflow runs
    std::filesystem::path baseline_scenario_path;  // scripted baseline runs
};

struct BenchmarkManifest {
    std::vector<ManifestEntry> entries;

    int expected_function_total() const;
};

// JSON manifest: {"benchmarks": [{name, code, tests, expected_functions,
// scenario?, baseline_scenario?}]}. Relative paths resolve against the
// manifest's directory.
BenchmarkManifest load_manifest(const std::filesystem::path& path);

VerificationTask load_task(const ManifestEntry& entry);

struct SuiteSummary {
    std::vector<RunResult> results;
    int solved_count = 0;
    int verified_function_total = 0;
    std::vector<std::pair<int, int>> aggregated_trajectory;  // (k, total verified)
    TokenUsage token_usage;
    std::vector<std::pair<std::string, std::string>> infrastructure_failures;  // (task, message)
};

using TaskRunner = std::function<RunResult(const ManifestEntry&, const VerificationTask&)>;

// Executes the runner on every entry and aggregates. Per-benchmark
// infrastructure failures are recorded as unsolved results and the suite
// continues.
SuiteSummary run_suite(const BenchmarkManifest& manifest, const TaskRunner& runner);

// For each k from 1 to the longest run, sum each benchmark's verified count
// at min(k, its final invocation): finished benchmarks hold their final count.
std::vector<std::pair<int, int>> aggregate_trajectory(const std::vector<RunResult>& results);

struct BenchmarkRobustness {
    std::string name;
    int successes = 0;
    int runs = 0;
    double success_fraction = 0.0;
    double avg_tokens = 0.0;
    double token_per_success = 0.0;  // infinity when success_fraction is 0
};

struct RobustnessStats {
    int runs = 0;
    double success_rate_mean = 0.0;    // solved executions / total executions
    double success_rate_stddev = 0.0;  // population stddev of per-run rates
    double avg_tokens_per_benchmark = 0.0;
    double tokens_stddev = 0.0;
    double tokens_cov = 0.0;  // stddev / mean
    double avg_input_tokens = 0.0;
    double input_stddev = 0.0;
    double input_cov = 0.0;
    double avg_output_tokens = 0.0;
    double output_stddev = 0.0;
    double output_cov = 0.0;
    std::vector<BenchmarkRobustness> per_benchmark;
};

// Aggregates repeated suite executions. Requires at least two summaries.
RobustnessStats robustness_stats(const std::vector<SuiteSummary>& summaries);

std::string robustness_to_json(const RobustnessStats& stats);
std::string suite_summary_to_json(const SuiteSummary& summary);

struct TrajectorySeries {
    std::string mode;  // "workflow" or "baseline"
    std::vector<std::pair<int, int>> points;
};

// CSV with header k,cumulative_verified,mode; one row per point per series.
void emit_plot_data(const std::vector<TrajectorySeries>& series, const std::filesystem::path& path);
std::vector<TrajectorySeries> parse_plot_data(const std::filesystem::path& path);

}  // namespace veristruct
