#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "veristruct/task.hpp"

namespace veristruct {

enum class Verdict { Verified, Failed, NotAttempted };

std::string to_string(Verdict v);

// Closed diagnostic taxonomy. Every parsed error lands in exactly one class;
// anything unmatched is Unknown.
enum class ErrorCategory {
    Syntax,
    Type,
    Mode,
    MissingElement,
    OldSelf,
    Arithmetic,
    Precondition,
    Postcondition,
    LoopInvariant,
    Decreases,
    Assertion,
    InvariantRedundant,
    Unknown,
};

std::string to_string(ErrorCategory c);
std::optional<ErrorCategory> error_category_from_string(const std::string& s);

// Lower rank = fix first. Structural and compilation problems come before
// semantic ones; assertion failures last since assertion repair presumes the
// method contracts already exist.
int severity_rank(ErrorCategory c);

struct DiagnosticPatterns {
    ErrorCategory category;
    std::vector<std::string> patterns;  // case-insensitive regex sources
};

// The shared ordered pattern table: drives diagnostic categorization here and
// repair routing in the repair engine, so both follow one priority order.
const std::vector<DiagnosticPatterns>& diagnostic_pattern_table();

struct SourceLocation {
    std::string file;
    int line = 0;
    int column = 0;
};

struct VerifierError {
    std::string message;
    std::optional<SourceLocation> location;
    ErrorCategory category = ErrorCategory::Unknown;

    int rank() const { return severity_rank(category); }
};

struct VerifierReport {
    std::map<std::string, Verdict> verdicts;  // function name -> verdict
    std::vector<VerifierError> errors;        // in emission order
    std::string raw_output;
    int exit_status = 0;
    double elapsed_s = 0.0;
    bool compiled = true;  // false when no verification summary was produced

    bool success() const { return errors.empty() && exit_status == 0; }
};

// One VerifierError per diagnostic, categories assigned by the shared ordered
// pattern table, emission order preserved. Best-effort: garbage yields an
// empty list.
std::vector<VerifierError> parse_diagnostics(const std::string& raw_output);

// The error to repair next: minimal severity rank, ties broken by emission
// order. Empty report -> nullopt.
std::optional<VerifierError> select_primary_error(const VerifierReport& report);

// Number of Verified verdicts. Zero when the candidate failed to compile.
int count_verified(const VerifierReport& report);

std::string report_to_json(const VerifierReport& report);
VerifierReport report_from_json(const std::string& text);

// Builds a report from raw verifier output plus the candidate source the run
// was about. Verdicts come from the summary line when present, attributing
// errors to enclosing functions by line span; with no summary the candidate
// failed to compile and nothing is attempted.
VerifierReport build_report(const std::string& raw_output, std::string_view candidate_source,
                            int exit_status, double elapsed_s);

// Anything that can verify a candidate. The process-backed client is the real
// one; tests also use an in-process scripted double.
class VerifierClient {
public:
    virtual ~VerifierClient() = default;
    // Runs the verifier, sets candidate.report, and returns the report.
    virtual VerifierReport run(CodeCandidate& candidate, const std::string& task_name,
                               const RunConfig& config) = 0;
};

// Invokes the external verifier executable in an isolated per-candidate
// workspace: <root>/<task>/<stage>/<iteration>/<sample>/main.rs, with the
// parsed report persisted next to it as report.json. Safe to call
// concurrently; a semaphore caps simultaneous verifier processes.
class ProcessVerifier : public VerifierClient {
public:
    VerifierReport run(CodeCandidate& candidate, const std::string& task_name,
                       const RunConfig& config) override;

    // Resolution order: config.verifier_path, then $VERISTRUCT_VERUS.
    static std::filesystem::path resolve_executable(const RunConfig& config);
};

}  // namespace veristruct
