#include "veristruct/verifier.hpp"

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <regex>

#include "json.hpp"
#include "veristruct/errors.hpp"
#include "veristruct/source_analysis.hpp"
#include "veristruct/subprocess.hpp"

namespace veristruct {

namespace {

using nlohmann::ordered_json;

struct CompiledPattern {
    ErrorCategory category;
    std::vector<std::regex> patterns;
};

const std::vector<CompiledPattern>& compiled_table() {
    static const std::vector<CompiledPattern> table = [] {
        std::vector<CompiledPattern> out;
        for (const DiagnosticPatterns& dp : diagnostic_pattern_table()) {
            CompiledPattern cp;
            cp.category = dp.category;
            for (const std::string& p : dp.patterns)
                cp.patterns.emplace_back(p, std::regex::icase);
            out.push_back(std::move(cp));
        }
        return out;
    }();
    return table;
}

ErrorCategory categorize(const std::string& message) {
    for (const CompiledPattern& cp : compiled_table())
        for (const std::regex& re : cp.patterns)
            if (std::regex_search(message, re)) return cp.category;
    return ErrorCategory::Unknown;
}

}  // namespace

// First match assigns the category; the repair registry routes with the same
// order, so structural problems outrank semantic ones everywhere.
const std::vector<DiagnosticPatterns>& diagnostic_pattern_table() {
    static const std::vector<DiagnosticPatterns> table = {
        {ErrorCategory::Syntax,
         {"expected one of", "unexpected token", "mismatched closing delimiter",
          "unclosed delimiter"}},
        {ErrorCategory::Type,
         {"mismatched types", "trait bound .* is not satisfied", "cannot infer type",
          "may fail to satisfy the declared type invariant", "\\bE0308\\b"}},
        {ErrorCategory::Mode,
         {"cannot call (the )?executable function", "with mode (exec|spec|proof)",
          "expression has mode", "cannot open the visibility"}},
        {ErrorCategory::MissingElement,
         {"failed to resolve", "cannot find (trait|type|function|value|macro)",
          "no method named", "unresolved import", "\\bE0433\\b", "\\bE0599\\b"}},
        {ErrorCategory::OldSelf, {"old\\(self\\)", "old\\(.*\\) to refer"}},
        {ErrorCategory::Arithmetic,
         {"possible arithmetic (overflow|underflow)", "arithmetic overflow",
          "arithmetic underflow", "nonlinear arithmetic"}},
        {ErrorCategory::Precondition, {"precondition not satisfied"}},
        {ErrorCategory::Postcondition, {"postcondition not satisfied"}},
        {ErrorCategory::LoopInvariant,
         {"invariant not satisfied (at end of|before) loop", "loop invariant"}},
        {ErrorCategory::Decreases,
         {"decreases not satisfied", "must have a decreases clause", "decreases clause"}},
        {ErrorCategory::Assertion, {"assertion failed"}},
        {ErrorCategory::InvariantRedundant,
         {"redundant (call|use|invocation)", "redundant invariant"}},
    };
    return table;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "verified";
        case Verdict::Failed: return "failed";
        case Verdict::NotAttempted: return "not_attempted";
    }
    return "not_attempted";
}

std::string to_string(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::Syntax: return "syntax";
        case ErrorCategory::Type: return "type";
        case ErrorCategory::Mode: return "mode";
        case ErrorCategory::MissingElement: return "missing_element";
        case ErrorCategory::OldSelf: return "old_self";
        case ErrorCategory::Arithmetic: return "arithmetic";
        case ErrorCategory::Precondition: return "precondition";
        case ErrorCategory::Postcondition: return "postcondition";
        case ErrorCategory::LoopInvariant: return "loop_invariant";
        case ErrorCategory::Decreases: return "decreases";
        case ErrorCategory::Assertion: return "assertion";
        case ErrorCategory::InvariantRedundant: return "invariant_redundant";
        case ErrorCategory::Unknown: return "unknown";
    }
    return "unknown";
}

std::optional<ErrorCategory> error_category_from_string(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(ErrorCategory::Unknown); ++i) {
        auto c = static_cast<ErrorCategory>(i);
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

int severity_rank(ErrorCategory c) { return static_cast<int>(c); }

std::vector<VerifierError> parse_diagnostics(const std::string& raw_output) {
    static const std::regex error_line(R"(^\s*error(\[[A-Z0-9]+\])?:\s*(.+?)\s*$)");
    static const std::regex location_line(R"(^\s*-->\s*([^:]+):(\d+):(\d+)\s*$)");
    static const std::regex abort_line(R"(aborting due to)");

    std::vector<VerifierError> out;
    std::istringstream iss(raw_output);
    std::string line;
    while (std::getline(iss, line)) {
        std::smatch m;
        if (!std::regex_match(line, m, error_line)) continue;
        std::string message = (m[1].matched ? m[1].str() + ": " : "") + m[2].str();
        if (std::regex_search(message, abort_line)) continue;  // rustc epilogue, not a diagnostic
        VerifierError err;
        err.message = message;
        err.category = categorize(message);
        // Peek at the next line for a location.
        std::streampos pos = iss.tellg();
        std::string next;
        if (std::getline(iss, next)) {
            std::smatch lm;
            if (std::regex_match(next, lm, location_line)) {
                err.location = SourceLocation{lm[1].str(), std::stoi(lm[2].str()),
                                              std::stoi(lm[3].str())};
            } else {
                iss.clear();
                iss.seekg(pos);
            }
        }
        out.push_back(std::move(err));
    }
    return out;
}

std::optional<VerifierError> select_primary_error(const VerifierReport& report) {
    if (report.errors.empty()) return std::nullopt;
    const VerifierError* best = &report.errors.front();
    for (const VerifierError& e : report.errors)
        if (e.rank() < best->rank()) best = &e;
    return *best;
}

int count_verified(const VerifierReport& report) {
    int n = 0;
    for (const auto& [_, v] : report.verdicts)
        if (v == Verdict::Verified) ++n;
    return n;
}

VerifierReport build_report(const std::string& raw_output, std::string_view candidate_source,
                            int exit_status, double elapsed_s) {
    static const std::regex summary(R"(verification results::\s*(\d+)\s+verified,\s*(\d+)\s+errors)");

    VerifierReport report;
    report.raw_output = raw_output;
    report.exit_status = exit_status;
    report.elapsed_s = elapsed_s;
    report.errors = parse_diagnostics(raw_output);

    std::smatch m;
    report.compiled = std::regex_search(raw_output, m, summary);

    std::vector<FunctionInfo> functions;
    try {
        functions = analyze_functions(candidate_source);
    } catch (const MalformedSource&) {
        report.compiled = false;
    }

    for (const FunctionInfo& f : functions) {
        if (!report.compiled) {
            report.verdicts[f.name] = Verdict::NotAttempted;
            continue;
        }
        bool failed = false;
        for (const VerifierError& e : report.errors)
            if (e.location && f.contains_line(e.location->line)) failed = true;
        report.verdicts[f.name] = failed ? Verdict::Failed : Verdict::Verified;
    }
    return report;
}

std::string report_to_json(const VerifierReport& report) {
    ordered_json j;
    ordered_json verdicts = ordered_json::object();
    for (const auto& [name, v] : report.verdicts) verdicts[name] = to_string(v);
    j["verdicts"] = verdicts;
    ordered_json errors = ordered_json::array();
    for (const VerifierError& e : report.errors) {
        ordered_json je;
        je["message"] = e.message;
        je["category"] = to_string(e.category);
        if (e.location) {
            je["file"] = e.location->file;
            je["line"] = e.location->line;
            je["column"] = e.location->column;
        }
        errors.push_back(je);
    }
    j["errors"] = errors;
    j["exit_status"] = report.exit_status;
    j["elapsed_s"] = report.elapsed_s;
    j["compiled"] = report.compiled;
    j["raw_output"] = report.raw_output;
    return j.dump(2) + "\n";
}

VerifierReport report_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    VerifierReport report;
    for (auto& [name, v] : j.at("verdicts").items()) {
        std::string s = v.get<std::string>();
        Verdict verdict = s == "verified"  ? Verdict::Verified
                          : s == "failed" ? Verdict::Failed
                                          : Verdict::NotAttempted;
        report.verdicts[name] = verdict;
    }
    for (auto& je : j.at("errors")) {
        VerifierError e;
        e.message = je.at("message").get<std::string>();
        e.category = error_category_from_string(je.at("category").get<std::string>())
                         .value_or(ErrorCategory::Unknown);
        if (je.contains("file"))
            e.location = SourceLocation{je["file"].get<std::string>(), je["line"].get<int>(),
                                        je["column"].get<int>()};
        report.errors.push_back(std::move(e));
    }
    report.exit_status = j.at("exit_status").get<int>();
    report.elapsed_s = j.at("elapsed_s").get<double>();
    report.compiled = j.at("compiled").get<bool>();
    report.raw_output = j.at("raw_output").get<std::string>();
    return report;
}

namespace {

// Caps concurrent verifier processes at a config-driven bound.
class ProcessGate {
public:
    void enter(int cap) {
        std::unique_lock lk(mu_);
        cv_.wait(lk, [&] { return active_ < std::max(1, cap); });
        ++active_;
    }
    void leave() {
        {
            std::lock_guard lk(mu_);
            --active_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mu_;
    std::condition_variable cv_;
    int active_ = 0;
};

ProcessGate g_gate;

std::string sanitize_component(std::string s) {
    for (char& c : s)
        if (c == '/' || c == '\\' || std::isspace(static_cast<unsigned char>(c))) c = '_';
    return s.empty() ? std::string("_") : s;
}

}  // namespace

std::filesystem::path ProcessVerifier::resolve_executable(const RunConfig& config) {
    std::filesystem::path exe;
    if (!config.verifier_path.empty()) {
        exe = config.verifier_path;
    } else if (const char* env = std::getenv("VERISTRUCT_VERUS"); env && *env) {
        exe = env;
    } else {
        throw VerifierUnavailable(
            "no verifier executable: set verifier.path or the VERISTRUCT_VERUS environment "
            "variable");
    }
    // The child runs in the workspace; keep PATH lookups, absolutize the rest.
    if (exe.is_relative() && exe.has_parent_path()) exe = std::filesystem::absolute(exe);
    return exe;
}

VerifierReport ProcessVerifier::run(CodeCandidate& candidate, const std::string& task_name,
                                    const RunConfig& config) {
    std::filesystem::path exe = resolve_executable(config);

    const Provenance& p = candidate.provenance;
    std::filesystem::path dir = config.workspace_root / sanitize_component(task_name) /
                                sanitize_component(p.stage) / std::to_string(p.iteration) /
                                std::to_string(p.sample_index);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw WorkspaceError("cannot create workspace " + dir.string() + ": " + ec.message());

    std::filesystem::path main_rs = dir / "main.rs";
    {
        std::ofstream out(main_rs, std::ios::binary);
        if (!out) throw WorkspaceError("cannot write " + main_rs.string());
        out << candidate.source;
    }

    std::vector<std::string> args = config.verifier_args;
    args.push_back(std::filesystem::absolute(main_rs).string());

    g_gate.enter(config.verifier_max_parallel);
    ProcessResult pr;
    try {
        pr = run_process(exe, args, dir, config.verifier_timeout_s);
    } catch (...) {
        g_gate.leave();
        throw;
    }
    g_gate.leave();

    if (pr.timed_out)
        throw VerifierTimeout("verifier exceeded " + std::to_string(config.verifier_timeout_s) +
                              "s on " + main_rs.string());
    if (pr.exit_status == 127)
        throw VerifierUnavailable("cannot execute verifier at " + exe.string());

    VerifierReport report = build_report(pr.output, candidate.source, pr.exit_status, pr.elapsed_s);
    {
        std::ofstream out(dir / "report.json", std::ios::binary);
        out << report_to_json(report);
    }
    candidate.report = std::make_shared<VerifierReport>(report);
    return report;
}

}  // namespace veristruct
