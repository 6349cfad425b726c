#include "veristruct/scripted.hpp"

#include <fstream>

#include "json.hpp"
#include "veristruct/errors.hpp"

namespace veristruct {

using nlohmann::json;

namespace {

ScriptedSample parse_sample(const json& js) {
    ScriptedSample s;
    s.prose = js.value("prose", "");
    s.emit_code = js.value("emit_code", true);
    s.literal_code = js.value("literal_code", "");
    auto read_pairs = [&](const char* field, std::vector<std::pair<std::string, std::string>>& out,
                          const char* a, const char* b) {
        if (!js.contains(field)) return;
        for (const auto& op : js.at(field)) out.emplace_back(op.at(a).get<std::string>(),
                                                             op.at(b).get<std::string>());
    };
    read_pairs("replace", s.replacements, "find", "with");
    read_pairs("insert_after", s.insert_after, "anchor", "text");
    read_pairs("insert_before", s.insert_before, "anchor", "text");
    if (js.contains("usage")) {
        s.usage.input_tokens = js["usage"].value("input", std::int64_t{0});
        s.usage.output_tokens = js["usage"].value("output", std::int64_t{0});
    }
    return s;
}

}  // namespace

ScriptedProvider::ScriptedProvider(const std::filesystem::path& scenario_json) {
    std::ifstream in(scenario_json);
    if (!in) throw ConfigError("cannot open scenario " + scenario_json.string());
    json j = json::parse(in);
    for (const auto& inv : j.at("llm").at("invocations")) {
        ScriptedInvocation si;
        si.tag = inv.at("tag").get<std::string>();
        for (const auto& sample : inv.at("samples")) si.samples.push_back(parse_sample(sample));
        if (si.samples.empty()) throw ConfigError("scenario invocation with no samples: " + si.tag);
        invocations_.push_back(std::move(si));
    }
}

const ScriptedInvocation& ScriptedProvider::next_invocation(const std::string& tag,
                                                            int sample_index) {
    // sample_index 1 opens the next scripted invocation for this tag; higher
    // indices keep sampling the one already open.
    if (sample_index <= 1 || !last_by_tag_.count(tag)) {
        std::size_t seen = 0;
        std::size_t want = cursor_by_tag_[tag]++;
        for (std::size_t i = 0; i < invocations_.size(); ++i) {
            if (invocations_[i].tag != tag) continue;
            if (seen == want) {
                last_by_tag_[tag] = i;
                return invocations_[i];
            }
            ++seen;
        }
        throw ConfigError("scenario exhausted for tag " + tag + " (invocation " +
                          std::to_string(want + 1) + ")");
    }
    return invocations_[last_by_tag_[tag]];
}

std::string apply_edit_script(const ScriptedSample& sample, const std::string& source) {
    std::string code = source;
    auto find_or_throw = [&](const std::string& needle) {
        std::size_t pos = code.find(needle);
        if (pos == std::string::npos)
            throw ConfigError("scenario edit anchor not found: \"" + needle + "\"");
        return pos;
    };
    for (const auto& [needle, with] : sample.replacements) {
        std::size_t pos = find_or_throw(needle);
        code.replace(pos, needle.size(), with);
    }
    for (const auto& [anchor, text] : sample.insert_after) {
        std::size_t pos = find_or_throw(anchor);
        std::size_t eol = code.find('\n', pos);
        if (eol == std::string::npos) eol = code.size();
        std::string block = text;
        if (block.empty() || block.back() != '\n') block += '\n';
        code.insert(eol + 1, block);
    }
    for (const auto& [anchor, text] : sample.insert_before) {
        std::size_t pos = find_or_throw(anchor);
        std::size_t bol = code.rfind('\n', pos);
        bol = (bol == std::string::npos) ? 0 : bol + 1;
        std::string block = text;
        if (block.empty() || block.back() != '\n') block += '\n';
        code.insert(bol, block);
    }
    return code;
}

Completion ScriptedProvider::complete(const PromptBundle& prompt, int sample_index) {
    std::lock_guard lk(mu_);
    const ScriptedInvocation& inv = next_invocation(prompt.module_tag, sample_index);
    if (inv.tag != prompt.module_tag)
        throw ConfigError("scenario tag mismatch: expected " + prompt.module_tag);

    std::size_t idx = static_cast<std::size_t>(std::max(1, sample_index)) - 1;
    if (idx >= inv.samples.size()) idx = inv.samples.size() - 1;  // repeat last sample
    const ScriptedSample& s = inv.samples[idx];

    Completion c;
    c.usage = s.usage;
    c.text = s.prose.empty() ? "" : s.prose + "\n";
    if (!s.emit_code) return c;

    std::string code;
    if (!s.literal_code.empty()) {
        code = s.literal_code;
    } else {
        const std::string* shown = prompt.section("Code and Tests");
        if (!shown) shown = prompt.section("Code with Error, and Tests");
        if (!shown) throw ConfigError("scripted provider found no code section in prompt tag " +
                                      prompt.module_tag);
        // The code section may carry extra material around the fenced file
        // (an error excerpt, an intro line); edit the fenced content only.
        std::string file = *shown;
        std::size_t fence = file.find("```\n");
        std::size_t fence_end = file.rfind("\n```");
        if (fence != std::string::npos && fence_end != std::string::npos && fence_end > fence)
            file = file.substr(fence + 4, fence_end - fence - 4);
        code = apply_edit_script(s, file);
    }
    c.text += "```rust\n" + code;
    if (code.empty() || code.back() != '\n') c.text += "\n";
    c.text += "```\n";
    return c;
}

}  // namespace veristruct
