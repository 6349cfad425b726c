#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "veristruct/task.hpp"

namespace veristruct {

struct TokenUsage {
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;

    std::int64_t total() const { return input_tokens + output_tokens; }
    TokenUsage& operator+=(const TokenUsage& o) {
        input_tokens += o.input_tokens;
        output_tokens += o.output_tokens;
        return *this;
    }
    bool operator==(const TokenUsage&) const = default;
};

// A prompt as an ordered list of labeled sections under one system text.
// The section labels follow the module prompt layout: Objective, Verus
// Guidelines / Relevant Background, Step-by-Step Instructions / Instructions,
// Examples, Code and Tests. The Code and Tests section always carries the
// current candidate source (tests included) verbatim.
struct PromptBundle {
    std::string system_text;
    std::vector<std::pair<std::string, std::string>> user_sections;
    std::string module_tag;  // "planner", "m1_view", "repair_mode", ...

    // Stable rendering used for hashing and for chat-style providers.
    std::string render_user() const;

    const std::string* section(const std::string& label) const;
};

std::string sha256_hex(std::string_view data);

// Content key for one sampled completion: pure function of the rendered
// prompt, so replay lookup is exact and re-serialization cannot drift it.
std::string invocation_key(const PromptBundle& prompt);
std::string transcript_key(const PromptBundle& prompt, int sample_index);

struct TranscriptEntry {
    std::string key;             // transcript_key(prompt, sample_index)
    std::string invocation_key;  // sample-independent prompt hash
    std::string module_tag;
    std::vector<std::pair<std::string, std::string>> prompt_sections;
    int sample_index = 1;  // 1-based
    std::string response_text;
    TokenUsage usage;
    std::string timestamp;  // ISO-8601, empty under replay
};

std::string transcript_entry_to_json(const TranscriptEntry& e);
TranscriptEntry transcript_entry_from_json(const std::string& line);

struct Completion {
    std::string text;
    TokenUsage usage;
};

// A chat-completion-shaped backend: system text + user text in, text out.
// sample_index is a hint for deterministic doubles; network providers ignore
// it.
class Provider {
public:
    virtual ~Provider() = default;
    virtual std::string name() const = 0;
    virtual Completion complete(const PromptBundle& prompt, int sample_index) = 0;
};

// Echoes the Code and Tests section (or the whole rendered prompt) back.
class EchoProvider : public Provider {
public:
    std::string name() const override { return "echo"; }
    Completion complete(const PromptBundle& prompt, int sample_index) override;
};

// OpenAI-compatible chat completions over HTTPS. The API key is read from the
// environment variable named by RunConfig::api_key_env.
class OpenAiProvider : public Provider {
public:
    OpenAiProvider(std::string base_url, std::string model, std::string api_key_env,
                   std::string decoding_params);
    std::string name() const override { return "openai"; }
    Completion complete(const PromptBundle& prompt, int sample_index) override;

private:
    std::string base_url_;
    std::string model_;
    std::string api_key_env_;
    std::string decoding_params_;
};

std::shared_ptr<Provider> make_provider(const RunConfig& config);

// Append-only JSON-lines transcript store, one entry per line, one file per
// run. Loading reads every *.jsonl under the directory.
class TranscriptStore {
public:
    explicit TranscriptStore(std::filesystem::path dir);

    void append(const TranscriptEntry& entry);
    void open_run(const std::string& run_id);  // selects the file to append to
    std::optional<TranscriptEntry> lookup(const std::string& key) const;
    void reload();

    std::vector<TranscriptEntry> all() const;
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    std::filesystem::path active_file_;
    std::map<std::string, TranscriptEntry> by_key_;
    mutable std::mutex mu_;
};

// Uniform sampling front end with record/replay. Live mode calls the
// provider; record mode additionally persists one transcript entry per
// sample; replay mode serves recorded responses with zero network use and
// accumulates the recorded usage.
class Gateway {
public:
    Gateway(LlmMode mode, std::shared_ptr<Provider> provider,
            std::shared_ptr<TranscriptStore> store);

    // Returns exactly sample_count responses, in sample-index order.
    std::vector<std::string> complete(const PromptBundle& prompt, int sample_count);

    TokenUsage total_usage() const { return usage_; }
    int invocation_count() const { return invocations_; }
    LlmMode mode() const { return mode_; }

private:
    Completion sample_once(const PromptBundle& prompt, int sample_index);

    LlmMode mode_;
    std::shared_ptr<Provider> provider_;
    std::shared_ptr<TranscriptStore> store_;
    TokenUsage usage_;
    int invocations_ = 0;
};

// The content of the last fenced code block, or nullopt when the response has
// none. Modules are instructed to emit complete files, and models often
// restate the input before the answer, so the last block is the candidate.
std::optional<std::string> extract_candidate(const std::string& response_text);

}  // namespace veristruct
