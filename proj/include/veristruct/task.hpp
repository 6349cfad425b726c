#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "veristruct/errors.hpp"

namespace veristruct {

// The immutable user input: a data-structure module plus its unit-test suite.
// Neither text is ever mutated by any pipeline stage.
struct VerificationTask {
    std::string name;
    std::string module_source;
    std::string test_source;

    // Module and tests concatenated into the single file the verifier sees.
    std::string combined_source() const { return module_source + "\n" + test_source; }
};

enum class LlmMode { Live, Record, Replay };

std::string to_string(LlmMode mode);
LlmMode llm_mode_from_string(const std::string& s);

// Run-wide knobs. Defaults follow the evaluated configuration: three samples
// per module invocation, five repair rounds.
struct RunConfig {
    int sample_count = 3;
    int max_repair_rounds = 5;
    LlmMode llm_mode = LlmMode::Replay;
    std::string decoding_params;  // provider-opaque, recorded into transcripts
    std::filesystem::path workspace_root = "workspace";

    // Verifier process settings.
    std::filesystem::path verifier_path;  // empty -> $VERISTRUCT_VERUS
    std::vector<std::string> verifier_args = {"--multiple-errors", "10"};
    double verifier_timeout_s = 120.0;
    int verifier_max_parallel = 4;

    // Provider settings (live mode).
    std::string provider = "scripted";
    std::string model;
    std::string api_base_url = "https://api.openai.com";
    std::string api_key_env = "OPENAI_API_KEY";
    std::filesystem::path scenario_path;  // scripted provider script

    std::optional<std::filesystem::path> transcript_dir;

    void validate() const {
        if (sample_count < 1) throw ConfigError("sample_count must be >= 1");
        if (max_repair_rounds < 1) throw ConfigError("max_repair_rounds must be >= 1");
    }
};

// The four generation modules, in dependency order.
enum class ModuleId : std::uint8_t {
    M1_View = 0,
    M2_TypeInvariant = 1,
    M3_Specification = 2,
    M4_ProofBlocks = 3,
};

inline constexpr std::array<ModuleId, 4> kCanonicalModuleOrder = {
    ModuleId::M1_View,
    ModuleId::M2_TypeInvariant,
    ModuleId::M3_Specification,
    ModuleId::M4_ProofBlocks,
};

std::string to_string(ModuleId id);                       // "M1".."M4"
std::optional<ModuleId> module_id_from_token(std::string token);

// Ordered subset of the canonical module sequence. Invariants: subsequence of
// <M1,M2,M3,M4> with no duplicates; M2 present implies M4 present.
struct Plan {
    std::vector<ModuleId> steps;

    bool contains(ModuleId id) const;
    bool valid() const;
    std::string to_string() const;  // "M1,M2,M3,M4"

    bool operator==(const Plan&) const = default;
};

// Sort into canonical order, deduplicate, and complete M2 => M4.
Plan normalize_plan(std::vector<ModuleId> steps);

Plan full_plan();

// Which pipeline step produced a candidate.
struct Provenance {
    std::string stage;      // "m1_view", "repair_mode", "baseline", ...
    std::string rule;       // module id or repair rule id, "" for baseline
    int iteration = 1;      // invocation ordinal within the stage (1-based)
    int sample_index = 1;   // 1-based; 0 for verify-only snapshots
};

struct VerifierReport;  // verifier.hpp

// A full annotated source snapshot plus, once verified, its report.
struct CodeCandidate {
    std::string source;
    std::shared_ptr<const VerifierReport> report;  // null until verified
    Provenance provenance;

    bool has_report() const { return report != nullptr; }
};

}  // namespace veristruct
