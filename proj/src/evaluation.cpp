#include "veristruct/evaluation.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "veristruct/errors.hpp"

namespace veristruct {

using nlohmann::ordered_json;

int BenchmarkManifest::expected_function_total() const {
    int total = 0;
    for (const ManifestEntry& e : entries) total += e.expected_functions;
    return total;
}

BenchmarkManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open manifest " + path.string());
    ordered_json j = ordered_json::parse(in);
    std::filesystem::path base = path.parent_path();

    auto resolve = [&](const std::string& p) -> std::filesystem::path {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : base / fp;
    };

    BenchmarkManifest manifest;
    for (const auto& jb : j.at("benchmarks")) {
        ManifestEntry e;
        e.name = jb.at("name").get<std::string>();
        e.code_path = resolve(jb.at("code").get<std::string>());
        e.tests_path = resolve(jb.at("tests").get<std::string>());
        e.expected_functions = jb.at("expected_functions").get<int>();
        if (jb.contains("scenario")) e.scenario_path = resolve(jb["scenario"].get<std::string>());
        if (jb.contains("baseline_scenario"))
            e.baseline_scenario_path = resolve(jb["baseline_scenario"].get<std::string>());
        manifest.entries.push_back(std::move(e));
    }
    return manifest;
}

VerificationTask load_task(const ManifestEntry& entry) {
    auto read = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw ConfigError("cannot open " + p.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    VerificationTask task;
    task.name = entry.name;
    task.module_source = read(entry.code_path);
    task.test_source = read(entry.tests_path);
    if (task.module_source.empty() || task.test_source.empty())
        throw ConfigError("task " + entry.name + " has an empty source file");
    return task;
}

SuiteSummary run_suite(const BenchmarkManifest& manifest, const TaskRunner& runner) {
    SuiteSummary summary;
    for (const ManifestEntry& entry : manifest.entries) {
        try {
            VerificationTask task = load_task(entry);
            summary.results.push_back(runner(entry, task));
        } catch (const Error& e) {
            summary.infrastructure_failures.emplace_back(entry.name, e.what());
            RunResult failed;
            failed.task_name = entry.name;
            failed.solved = false;
            failed.total_functions = entry.expected_functions;
            summary.results.push_back(std::move(failed));
        }
    }
    for (const RunResult& r : summary.results) {
        if (r.solved) ++summary.solved_count;
        summary.verified_function_total += r.verified_functions;
        summary.token_usage += r.token_usage;
    }
    summary.aggregated_trajectory = aggregate_trajectory(summary.results);
    return summary;
}

std::vector<std::pair<int, int>> aggregate_trajectory(const std::vector<RunResult>& results) {
    std::size_t max_k = 0;
    for (const RunResult& r : results) max_k = std::max(max_k, r.trajectory.size());

    std::vector<std::pair<int, int>> out;
    for (std::size_t k = 1; k <= max_k; ++k) {
        int total = 0;
        for (const RunResult& r : results) {
            if (r.trajectory.empty()) continue;
            // A finished benchmark holds its final count for larger k.
            std::size_t idx = std::min(k, r.trajectory.size()) - 1;
            total += r.trajectory[idx].verified;
        }
        out.emplace_back(static_cast<int>(k), total);
    }
    return out;
}

namespace {

struct Stats {
    double mean = 0.0;
    double stddev = 0.0;  // population

    static Stats of(const std::vector<double>& xs) {
        Stats s;
        if (xs.empty()) return s;
        for (double x : xs) s.mean += x;
        s.mean /= static_cast<double>(xs.size());
        double var = 0.0;
        for (double x : xs) var += (x - s.mean) * (x - s.mean);
        var /= static_cast<double>(xs.size());
        s.stddev = std::sqrt(var);
        return s;
    }
};

double cov(const Stats& s) { return s.mean == 0.0 ? 0.0 : s.stddev / s.mean; }

}  // namespace

RobustnessStats robustness_stats(const std::vector<SuiteSummary>& summaries) {
    if (summaries.size() < 2)
        throw InsufficientRuns("robustness statistics need at least two suite runs");

    RobustnessStats stats;
    stats.runs = static_cast<int>(summaries.size());

    int solved_total = 0;
    int executions = 0;
    std::vector<double> per_run_rates, per_run_tokens, per_run_input, per_run_output;
    for (const SuiteSummary& s : summaries) {
        int n = static_cast<int>(s.results.size());
        solved_total += s.solved_count;
        executions += n;
        per_run_rates.push_back(n == 0 ? 0.0 : static_cast<double>(s.solved_count) / n);
        per_run_tokens.push_back(n == 0 ? 0.0
                                        : static_cast<double>(s.token_usage.total()) / n);
        per_run_input.push_back(n == 0 ? 0.0
                                       : static_cast<double>(s.token_usage.input_tokens) / n);
        per_run_output.push_back(n == 0 ? 0.0
                                        : static_cast<double>(s.token_usage.output_tokens) / n);
    }
    stats.success_rate_mean =
        executions == 0 ? 0.0 : static_cast<double>(solved_total) / executions;
    stats.success_rate_stddev = Stats::of(per_run_rates).stddev;

    Stats t = Stats::of(per_run_tokens);
    stats.avg_tokens_per_benchmark = t.mean;
    stats.tokens_stddev = t.stddev;
    stats.tokens_cov = cov(t);
    Stats ti = Stats::of(per_run_input);
    stats.avg_input_tokens = ti.mean;
    stats.input_stddev = ti.stddev;
    stats.input_cov = cov(ti);
    Stats to = Stats::of(per_run_output);
    stats.avg_output_tokens = to.mean;
    stats.output_stddev = to.stddev;
    stats.output_cov = cov(to);

    // Per-benchmark aggregation, keyed by task name in first-run order.
    std::vector<std::string> order;
    std::map<std::string, BenchmarkRobustness> by_name;
    for (const SuiteSummary& s : summaries) {
        for (const RunResult& r : s.results) {
            auto it = by_name.find(r.task_name);
            if (it == by_name.end()) {
                order.push_back(r.task_name);
                it = by_name.emplace(r.task_name, BenchmarkRobustness{r.task_name}).first;
            }
            BenchmarkRobustness& b = it->second;
            ++b.runs;
            if (r.solved) ++b.successes;
            b.avg_tokens += static_cast<double>(r.token_usage.total());
        }
    }
    for (const std::string& name : order) {
        BenchmarkRobustness b = by_name[name];
        if (b.runs > 0) b.avg_tokens /= b.runs;
        b.success_fraction = b.runs == 0 ? 0.0 : static_cast<double>(b.successes) / b.runs;
        b.token_per_success = b.success_fraction == 0.0
                                  ? std::numeric_limits<double>::infinity()
                                  : b.avg_tokens / b.success_fraction;
        stats.per_benchmark.push_back(std::move(b));
    }
    return stats;
}

namespace {

ordered_json finite_or_string(double x) {
    if (std::isinf(x)) return "inf";
    return x;
}

}  // namespace

std::string robustness_to_json(const RobustnessStats& stats) {
    ordered_json j;
    j["runs"] = stats.runs;
    j["success_rate"] = ordered_json{{"mean", stats.success_rate_mean},
                                     {"stddev", stats.success_rate_stddev}};
    j["tokens_per_benchmark"] =
        ordered_json{{"mean", stats.avg_tokens_per_benchmark},
                     {"stddev", stats.tokens_stddev},
                     {"coefficient_of_variation", stats.tokens_cov}};
    j["input_tokens"] = ordered_json{{"mean", stats.avg_input_tokens},
                                     {"stddev", stats.input_stddev},
                                     {"coefficient_of_variation", stats.input_cov}};
    j["output_tokens"] = ordered_json{{"mean", stats.avg_output_tokens},
                                      {"stddev", stats.output_stddev},
                                      {"coefficient_of_variation", stats.output_cov}};
    ordered_json per = ordered_json::array();
    for (const BenchmarkRobustness& b : stats.per_benchmark) {
        per.push_back(ordered_json{{"name", b.name},
                                   {"successes", b.successes},
                                   {"runs", b.runs},
                                   {"success_fraction", b.success_fraction},
                                   {"avg_tokens", b.avg_tokens},
                                   {"token_per_success", finite_or_string(b.token_per_success)}});
    }
    j["per_benchmark"] = per;
    return j.dump(2) + "\n";
}

std::string suite_summary_to_json(const SuiteSummary& summary) {
    ordered_json j;
    j["solved"] = summary.solved_count;
    j["benchmarks"] = summary.results.size();
    j["verified_functions"] = summary.verified_function_total;
    j["token_usage"] = ordered_json{{"input_tokens", summary.token_usage.input_tokens},
                                    {"output_tokens", summary.token_usage.output_tokens}};
    ordered_json per = ordered_json::array();
    for (const RunResult& r : summary.results) {
        per.push_back(ordered_json{{"name", r.task_name},
                                   {"solved", r.solved},
                                   {"verified_functions", r.verified_functions},
                                   {"total_functions", r.total_functions},
                                   {"llm_invocations", r.llm_invocations},
                                   {"plan", r.plan}});
    }
    j["per_benchmark"] = per;
    ordered_json traj = ordered_json::array();
    for (const auto& [k, v] : summary.aggregated_trajectory)
        traj.push_back(ordered_json::array({k, v}));
    j["aggregated_trajectory"] = traj;
    if (!summary.infrastructure_failures.empty()) {
        ordered_json fails = ordered_json::array();
        for (const auto& [name, msg] : summary.infrastructure_failures)
            fails.push_back(ordered_json{{"name", name}, {"message", msg}});
        j["infrastructure_failures"] = fails;
    }
    return j.dump(2) + "\n";
}

void emit_plot_data(const std::vector<TrajectorySeries>& series,
                    const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw WorkspaceError("cannot write " + path.string());
    out << "k,cumulative_verified,mode\n";
    for (const TrajectorySeries& s : series)
        for (const auto& [k, v] : s.points) out << k << "," << v << "," << s.mode << "\n";
}

std::vector<TrajectorySeries> parse_plot_data(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "k,cumulative_verified,mode")
        throw ConfigError("bad plot data header in " + path.string());

    std::vector<TrajectorySeries> series;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t c1 = line.find(',');
        std::size_t c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ConfigError("bad plot data row: " + line);
        int k = std::stoi(line.substr(0, c1));
        int v = std::stoi(line.substr(c1 + 1, c2 - c1 - 1));
        std::string mode = line.substr(c2 + 1);
        if (series.empty() || series.back().mode != mode)
            series.push_back(TrajectorySeries{mode, {}});
        series.back().points.emplace_back(k, v);
    }
    return series;
}

}  // namespace veristruct
