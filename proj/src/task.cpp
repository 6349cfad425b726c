#include "veristruct/task.hpp"

#include <algorithm>
#include <cctype>

namespace veristruct {

std::string to_string(LlmMode mode) {
    switch (mode) {
        case LlmMode::Live: return "live";
        case LlmMode::Record: return "record";
        case LlmMode::Replay: return "replay";
    }
    return "replay";
}

LlmMode llm_mode_from_string(const std::string& s) {
    if (s == "live") return LlmMode::Live;
    if (s == "record") return LlmMode::Record;
    if (s == "replay") return LlmMode::Replay;
    throw ConfigError("unknown llm mode: " + s);
}

std::string to_string(ModuleId id) {
    switch (id) {
        case ModuleId::M1_View: return "M1";
        case ModuleId::M2_TypeInvariant: return "M2";
        case ModuleId::M3_Specification: return "M3";
        case ModuleId::M4_ProofBlocks: return "M4";
    }
    return "M?";
}

std::optional<ModuleId> module_id_from_token(std::string token) {
    std::string trimmed;
    for (char c : token)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.size() < 2) return std::nullopt;
    if (trimmed[0] != 'M' && trimmed[0] != 'm') return std::nullopt;
    switch (trimmed[1]) {
        case '1': return ModuleId::M1_View;
        case '2': return ModuleId::M2_TypeInvariant;
        case '3': return ModuleId::M3_Specification;
        case '4': return ModuleId::M4_ProofBlocks;
        default: return std::nullopt;
    }
}

bool Plan::contains(ModuleId id) const {
    return std::find(steps.begin(), steps.end(), id) != steps.end();
}

bool Plan::valid() const {
    // Strictly increasing in canonical order implies subsequence + no dups.
    for (std::size_t i = 1; i < steps.size(); ++i)
        if (static_cast<int>(steps[i - 1]) >= static_cast<int>(steps[i])) return false;
    if (contains(ModuleId::M2_TypeInvariant) && !contains(ModuleId::M4_ProofBlocks)) return false;
    return true;
}

std::string Plan::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i) out += ",";
        out += veristruct::to_string(steps[i]);
    }
    return out;
}

Plan normalize_plan(std::vector<ModuleId> steps) {
    Plan plan;
    for (ModuleId id : kCanonicalModuleOrder)
        if (std::find(steps.begin(), steps.end(), id) != steps.end()) plan.steps.push_back(id);
    if (plan.contains(ModuleId::M2_TypeInvariant) && !plan.contains(ModuleId::M4_ProofBlocks))
        plan.steps.push_back(ModuleId::M4_ProofBlocks);
    return plan;
}

Plan full_plan() {
    return Plan{{kCanonicalModuleOrder.begin(), kCanonicalModuleOrder.end()}};
}

}  // namespace veristruct
