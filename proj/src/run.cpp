#include "veristruct/run.hpp"

#include <chrono>
#include <fstream>

#include "json.hpp"
#include "veristruct/errors.hpp"
#include "veristruct/source_analysis.hpp"

namespace veristruct {

using nlohmann::ordered_json;

namespace {

struct RunMeter {
    std::vector<TrajectoryPoint> trajectory;
    int k = 0;

    StageObserver observer() {
        return [this](const std::string& stage, const CodeCandidate& adopted) {
            ++k;
            int verified = adopted.report ? count_verified(*adopted.report) : 0;
            trajectory.push_back(TrajectoryPoint{k, verified, stage});
        };
    }
};

}  // namespace

RunResult verify_module(const VerificationTask& task, const RunConfig& config, PipelineEnv& env) {
    config.validate();
    auto t0 = std::chrono::steady_clock::now();
    TokenUsage usage_before = env.gateway.total_usage();

    RunMeter meter;
    StageObserver observe = meter.observer();

    GenerationOutcome gen =
        gen_annotations(task, config, env.gateway, env.verifier, observe);
    RepairOutcome rep = repair_annotations(gen.candidate, task, config, env.repair_registry,
                                           env.gateway, env.verifier, observe);

    const CodeCandidate& final_candidate = rep.final_candidate;
    if (!check_preservation(task, final_candidate.source))
        throw Error("preservation violated by final candidate of task " + task.name);

    RunResult result;
    result.task_name = task.name;
    result.mode = "workflow";
    result.solved = rep.status == RepairStatus::Success;
    result.final_source = final_candidate.source;
    result.total_functions = count_exec_functions(final_candidate.source);
    result.verified_functions =
        final_candidate.report ? count_verified(*final_candidate.report) : 0;
    result.llm_invocations = meter.k;
    result.trajectory = std::move(meter.trajectory);
    result.plan = gen.plan.to_string();
    result.rule_trace = rep.rule_trace;
    result.repair_rounds = rep.rounds_used;

    TokenUsage after = env.gateway.total_usage();
    result.token_usage = TokenUsage{after.input_tokens - usage_before.input_tokens,
                                    after.output_tokens - usage_before.output_tokens};
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.elapsed_s = config.llm_mode == LlmMode::Replay ? 0.0 : elapsed;
    return result;
}

PromptBundle build_baseline_prompt(const VerificationTask& task, const CodeCandidate& previous,
                                   const std::optional<VerifierError>& previous_error) {
    PromptBundle prompt;
    prompt.system_text =
        "You are an expert in Verus, the SMT-backed deductive verifier for Rust. Annotate the "
        "module below so the verifier accepts it. Never modify executable code or unit tests.";
    prompt.module_tag = "baseline";

    std::string code =
        "The module and its unit tests, as the single file under verification:\n```\n" +
        task.combined_source();
    if (code.back() != '\n') code += '\n';
    code += "```\n";

    prompt.user_sections = {
        {"Objective",
         "Add all verification annotations at once: a View implementation if useful, a type "
         "invariant, specification functions, requires/ensures clauses, and proof blocks. "
         "Return the complete annotated file in one fenced code block."},
        {"Code and Tests", code},
    };

    if (previous_error) {
        std::string attempt = "The previous attempt failed. The verifier reported:\n    error: " +
                              previous_error->message + "\n";
        if (previous_error->location)
            attempt += "    --> main.rs:" + std::to_string(previous_error->location->line) + ":" +
                       std::to_string(previous_error->location->column) + "\n";
        attempt += "\nThe failing code was:\n```\n" + previous.source;
        if (!previous.source.empty() && previous.source.back() != '\n') attempt += '\n';
        attempt += "```\n";
        prompt.user_sections.emplace_back("Previous Attempt", attempt);
    }
    return prompt;
}

RunResult run_baseline(const VerificationTask& task, int invocation_budget,
                       const RunConfig& config, PipelineEnv& env) {
    config.validate();
    auto t0 = std::chrono::steady_clock::now();
    TokenUsage usage_before = env.gateway.total_usage();

    CodeCandidate current;
    current.source = task.combined_source();
    current.provenance = {"baseline", "", 0, 0};

    std::vector<TrajectoryPoint> trajectory;
    std::optional<VerifierError> last_error;
    bool solved = false;

    for (int attempt = 1; attempt <= invocation_budget; ++attempt) {
        PromptBundle prompt = build_baseline_prompt(task, current, last_error);
        std::vector<std::string> responses = env.gateway.complete(prompt, 1);

        if (auto code = extract_candidate(responses.front())) {
            bool preserved = false;
            try {
                preserved = check_preservation(task, *code);
            } catch (const MalformedSource&) {
                preserved = false;
            }
            if (preserved) {
                CodeCandidate cand;
                cand.source = std::move(*code);
                cand.provenance = {"baseline", "", attempt, 1};
                env.verifier.run(cand, task.name, config);
                current = std::move(cand);
            }
        }

        int verified = current.report ? count_verified(*current.report) : 0;
        trajectory.push_back(TrajectoryPoint{attempt, verified, "baseline"});

        if (current.report && current.report->errors.empty()) {
            solved = true;
            break;
        }
        last_error = current.report ? select_primary_error(*current.report) : std::nullopt;
    }

    RunResult result;
    result.task_name = task.name;
    result.mode = "baseline";
    result.solved = solved;
    result.final_source = current.source;
    result.total_functions = count_exec_functions(current.source);
    result.verified_functions = current.report ? count_verified(*current.report) : 0;
    result.llm_invocations = static_cast<int>(trajectory.size());
    result.trajectory = std::move(trajectory);

    TokenUsage after = env.gateway.total_usage();
    result.token_usage = TokenUsage{after.input_tokens - usage_before.input_tokens,
                                    after.output_tokens - usage_before.output_tokens};
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.elapsed_s = config.llm_mode == LlmMode::Replay ? 0.0 : elapsed;
    return result;
}

std::string run_result_to_json(const RunResult& r) {
    ordered_json j;
    j["task"] = r.task_name;
    j["mode"] = r.mode;
    j["solved"] = r.solved;
    j["verified_functions"] = r.verified_functions;
    j["total_functions"] = r.total_functions;
    j["llm_invocations"] = r.llm_invocations;
    j["repair_rounds"] = r.repair_rounds;
    j["elapsed_s"] = r.elapsed_s;
    j["plan"] = r.plan;
    j["token_usage"] =
        ordered_json{{"input_tokens", r.token_usage.input_tokens},
                     {"output_tokens", r.token_usage.output_tokens}};
    j["rule_trace"] = r.rule_trace;
    ordered_json traj = ordered_json::array();
    for (const TrajectoryPoint& p : r.trajectory)
        traj.push_back(ordered_json{{"k", p.k}, {"verified", p.verified}, {"stage", p.stage}});
    j["trajectory"] = traj;
    j["final_source"] = r.final_source;
    return j.dump(2) + "\n";
}

RunResult run_result_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    RunResult r;
    r.task_name = j.at("task").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.solved = j.at("solved").get<bool>();
    r.verified_functions = j.at("verified_functions").get<int>();
    r.total_functions = j.at("total_functions").get<int>();
    r.llm_invocations = j.at("llm_invocations").get<int>();
    r.repair_rounds = j.at("repair_rounds").get<int>();
    r.elapsed_s = j.at("elapsed_s").get<double>();
    r.plan = j.at("plan").get<std::string>();
    r.token_usage.input_tokens = j.at("token_usage").at("input_tokens").get<std::int64_t>();
    r.token_usage.output_tokens = j.at("token_usage").at("output_tokens").get<std::int64_t>();
    for (const auto& s : j.at("rule_trace")) r.rule_trace.push_back(s.get<std::string>());
    for (const auto& p : j.at("trajectory"))
        r.trajectory.push_back(TrajectoryPoint{p.at("k").get<int>(), p.at("verified").get<int>(),
                                               p.at("stage").get<std::string>()});
    r.final_source = j.at("final_source").get<std::string>();
    return r;
}

void emit_run_report(const RunResult& result, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw WorkspaceError("cannot create " + out_dir.string() + ": " + ec.message());
    {
        std::ofstream out(out_dir / "report.json", std::ios::binary);
        if (!out) throw WorkspaceError("cannot write report.json under " + out_dir.string());
        out << run_result_to_json(result);
    }
    {
        std::ofstream out(out_dir / "final.rs", std::ios::binary);
        if (!out) throw WorkspaceError("cannot write final.rs under " + out_dir.string());
        out << result.final_source;
    }
}

}  // namespace veristruct
