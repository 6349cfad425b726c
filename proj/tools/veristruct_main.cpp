#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "veristruct/config.hpp"
#include "veristruct/errors.hpp"
#include "veristruct/evaluation.hpp"
#include "veristruct/llm.hpp"
#include "veristruct/run.hpp"
#include "veristruct/scripted.hpp"
#include "veristruct/verifier.hpp"

namespace fs = std::filesystem;
using namespace veristruct;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string mode = "replay";
    int samples = 3;
    int max_repairs = 5;
    std::string transcripts;
    std::string out_dir = "out";
    std::string workspace;
    std::string verifier;
    std::string provider;
    std::string scenario;
    std::string model;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "INI-style config file");
    cmd->add_option("--mode", o.mode, "live|record|replay")->check(CLI::IsMember({"live", "record", "replay"}));
    cmd->add_option("--samples", o.samples, "samples per module invocation (n)");
    cmd->add_option("--max-repairs", o.max_repairs, "repair round budget (m)");
    cmd->add_option("--transcripts", o.transcripts, "transcript directory (record/replay)");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--workspace", o.workspace, "verifier workspace root");
    cmd->add_option("--verifier", o.verifier, "verifier executable (or $VERISTRUCT_VERUS)");
    cmd->add_option("--provider", o.provider, "LLM provider: scripted|openai|echo");
    cmd->add_option("--scenario", o.scenario, "scenario JSON for the scripted provider");
    cmd->add_option("--model", o.model, "model name for live providers");
}

RunConfig make_run_config(const CLI::App* cmd, const CommonOpts& o) {
    RunConfig run;
    if (!o.config_path.empty()) Config::load(o.config_path).apply(run);
    run.llm_mode = llm_mode_from_string(o.mode);
    if (cmd->count("--samples")) run.sample_count = o.samples;
    if (cmd->count("--max-repairs")) run.max_repair_rounds = o.max_repairs;
    if (!o.transcripts.empty()) run.transcript_dir = o.transcripts;
    if (!o.workspace.empty()) run.workspace_root = o.workspace;
    if (!o.verifier.empty()) run.verifier_path = o.verifier;
    if (!o.provider.empty()) run.provider = o.provider;
    if (!o.scenario.empty()) run.scenario_path = o.scenario;
    if (!o.model.empty()) run.model = o.model;
    run.validate();
    return run;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::shared_ptr<TranscriptStore> make_store(const RunConfig& run) {
    if (run.llm_mode == LlmMode::Live) return nullptr;
    if (!run.transcript_dir)
        throw ConfigError("record/replay mode needs --transcripts <dir>");
    return std::make_shared<TranscriptStore>(*run.transcript_dir);
}

Gateway make_gateway(const RunConfig& run, std::shared_ptr<TranscriptStore> store) {
    std::shared_ptr<Provider> provider;
    if (run.llm_mode != LlmMode::Replay) provider = make_provider(run);
    return Gateway(run.llm_mode, std::move(provider), std::move(store));
}

int report_outcome(const RunResult& result, const fs::path& out_dir) {
    emit_run_report(result, out_dir);
    std::cout << result.task_name << ": " << (result.solved ? "solved" : "NOT solved") << ", "
              << result.verified_functions << "/" << result.total_functions << " functions, "
              << result.llm_invocations << " LLM invocations\n";
    std::cout << "report: " << (out_dir / "report.json").string() << "\n";
    return result.solved ? 0 : 2;
}

int cmd_verify(const CLI::App* cmd, const CommonOpts& o, const std::string& code,
               const std::string& tests, std::string name) {
    RunConfig run = make_run_config(cmd, o);
    if (name.empty()) name = fs::path(code).stem().string();

    VerificationTask task{name, slurp(code), slurp(tests)};
    auto store = make_store(run);
    if (store) store->open_run(name);
    Gateway gateway = make_gateway(run, store);
    ProcessVerifier verifier;
    PipelineEnv env{gateway, verifier, default_repair_registry()};

    RunResult result = verify_module(task, run, env);
    return report_outcome(result, fs::path(o.out_dir) / name);
}

int cmd_baseline(const CLI::App* cmd, const CommonOpts& o, const std::string& code,
                 const std::string& tests, std::string name, int budget) {
    RunConfig run = make_run_config(cmd, o);
    if (name.empty()) name = fs::path(code).stem().string();

    VerificationTask task{name, slurp(code), slurp(tests)};
    auto store = make_store(run);
    if (store) store->open_run(name + ".baseline");
    Gateway gateway = make_gateway(run, store);
    ProcessVerifier verifier;
    PipelineEnv env{gateway, verifier, default_repair_registry()};

    RunResult result = run_baseline(task, budget, run, env);
    return report_outcome(result, fs::path(o.out_dir) / (name + "-baseline"));
}

int cmd_bench(const CLI::App* cmd, const CommonOpts& o, const std::string& manifest_path,
              int budget, bool with_baseline, int repeat) {
    RunConfig base_run = make_run_config(cmd, o);
    BenchmarkManifest manifest = load_manifest(manifest_path);
    fs::path out_dir(o.out_dir);
    fs::create_directories(out_dir);

    auto store = make_store(base_run);
    ProcessVerifier verifier;

    auto workflow_runner = [&](const ManifestEntry& entry, const VerificationTask& task) {
        RunConfig run = base_run;
        if (!entry.scenario_path.empty() && run.provider == "scripted")
            run.scenario_path = entry.scenario_path;
        if (store) store->open_run(task.name);
        Gateway gateway = make_gateway(run, store);
        PipelineEnv env{gateway, verifier, default_repair_registry()};
        RunResult result = verify_module(task, run, env);
        emit_run_report(result, out_dir / "workflow" / task.name);
        return result;
    };

    std::vector<SuiteSummary> workflow_runs;
    for (int i = 0; i < std::max(1, repeat); ++i)
        workflow_runs.push_back(run_suite(manifest, workflow_runner));
    const SuiteSummary& workflow = workflow_runs.front();

    {
        std::ofstream out(out_dir / "summary.json", std::ios::binary);
        out << suite_summary_to_json(workflow);
    }
    std::cout << "workflow: " << workflow.solved_count << "/" << workflow.results.size()
              << " solved, " << workflow.verified_function_total << "/"
              << manifest.expected_function_total() << " functions\n";

    std::vector<TrajectorySeries> series;
    series.push_back(TrajectorySeries{"workflow", workflow.aggregated_trajectory});

    if (with_baseline) {
        auto baseline_runner = [&](const ManifestEntry& entry, const VerificationTask& task) {
            RunConfig run = base_run;
            if (!entry.baseline_scenario_path.empty() && run.provider == "scripted")
                run.scenario_path = entry.baseline_scenario_path;
            if (store) store->open_run(task.name + ".baseline");
            Gateway gateway = make_gateway(run, store);
            PipelineEnv env{gateway, verifier, default_repair_registry()};
            RunResult result = run_baseline(task, budget, run, env);
            emit_run_report(result, out_dir / "baseline" / task.name);
            return result;
        };
        SuiteSummary baseline = run_suite(manifest, baseline_runner);
        {
            std::ofstream out(out_dir / "baseline_summary.json", std::ios::binary);
            out << suite_summary_to_json(baseline);
        }
        std::cout << "baseline: " << baseline.solved_count << "/" << baseline.results.size()
                  << " solved, " << baseline.verified_function_total << "/"
                  << manifest.expected_function_total() << " functions\n";
        series.push_back(TrajectorySeries{"baseline", baseline.aggregated_trajectory});
    }

    emit_plot_data(series, out_dir / "trajectory.csv");

    if (workflow_runs.size() >= 2) {
        RobustnessStats stats = robustness_stats(workflow_runs);
        std::ofstream out(out_dir / "robustness.json", std::ios::binary);
        out << robustness_to_json(stats);
        std::cout << "robustness: success rate "
                  << 100.0 * stats.success_rate_mean << "% over " << stats.runs << " runs\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"veristruct: annotation synthesis and repair for Verus modules"};
    app.require_subcommand(1);

    CommonOpts vo, bo, eo;
    std::string v_code, v_tests, v_name;
    std::string b_code, b_tests, b_name;
    int b_budget = 13;
    std::string manifest_path;
    int e_budget = 13, e_repeat = 1;
    bool e_with_baseline = false;

    CLI::App* verify = app.add_subcommand("verify", "annotate and verify one module");
    verify->add_option("--code", v_code, "module source file")->required();
    verify->add_option("--tests", v_tests, "unit test file")->required();
    verify->add_option("--name", v_name, "task name (default: code file stem)");
    add_common(verify, vo);

    CLI::App* baseline = app.add_subcommand("baseline", "single-shot baseline comparator");
    baseline->add_option("--code", b_code, "module source file")->required();
    baseline->add_option("--tests", b_tests, "unit test file")->required();
    baseline->add_option("--name", b_name, "task name (default: code file stem)");
    baseline->add_option("--budget", b_budget, "LLM invocation budget");
    add_common(baseline, bo);

    CLI::App* bench = app.add_subcommand("bench", "run a benchmark manifest");
    bench->add_option("--manifest", manifest_path, "benchmark manifest JSON")->required();
    bench->add_option("--budget", e_budget, "baseline LLM invocation budget");
    bench->add_flag("--with-baseline", e_with_baseline, "also run the baseline suite");
    bench->add_option("--repeat", e_repeat, "workflow suite repetitions (robustness stats)");
    add_common(bench, eo);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(verify, vo, v_code, v_tests, v_name);
        if (baseline->parsed())
            return cmd_baseline(baseline, bo, b_code, b_tests, b_name, b_budget);
        if (bench->parsed())
            return cmd_bench(bench, eo, manifest_path, e_budget, e_with_baseline, e_repeat);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
