#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "veristruct/llm.hpp"

namespace veristruct {

// One scripted response: optional prose, an edit script applied to the code
// the prompt carries, and the token usage to report. Used when recording
// deterministic fixture runs offline.
struct ScriptedSample {
    std::string prose;                 // text emitted before the code block
    bool emit_code = true;             // false -> prose-only response
    std::string literal_code;          // verbatim code block, bypasses edits
    std::vector<std::pair<std::string, std::string>> replacements;  // find -> with, first occurrence
    std::vector<std::pair<std::string, std::string>> insert_after;  // anchor line substring -> block
    std::vector<std::pair<std::string, std::string>> insert_before;
    TokenUsage usage{900, 400};
};

struct ScriptedInvocation {
    std::string tag;  // must equal the prompt's module_tag
    std::vector<ScriptedSample> samples;
};

// Replays a hand-written scenario: responses are keyed by the prompt's
// module_tag and consumed in order per tag. The sample's edit script runs
// against the source found in the prompt's Code and Tests section, which is
// what a model editing the shown file would do.
class ScriptedProvider : public Provider {
public:
    explicit ScriptedProvider(const std::filesystem::path& scenario_json);

    std::string name() const override { return "scripted"; }
    Completion complete(const PromptBundle& prompt, int sample_index) override;

private:
    const ScriptedInvocation& next_invocation(const std::string& tag, int sample_index);

    std::vector<ScriptedInvocation> invocations_;
    std::map<std::string, std::size_t> cursor_by_tag_;  // consumed count per tag
    std::map<std::string, std::size_t> last_by_tag_;    // active invocation while sampling
    std::mutex mu_;
};

// Applies a scripted edit script to a source file. Throws ConfigError when an
// anchor or needle does not occur.
std::string apply_edit_script(const ScriptedSample& sample, const std::string& source);

}  // namespace veristruct
