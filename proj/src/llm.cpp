#include "veristruct/llm.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "veristruct/errors.hpp"
#include "veristruct/scripted.hpp"

namespace veristruct {

using nlohmann::ordered_json;

std::string PromptBundle::render_user() const {
    std::string out;
    for (const auto& [label, text] : user_sections) {
        out += "[" + label + "]\n";
        out += text;
        if (!text.empty() && text.back() != '\n') out += '\n';
        out += '\n';
    }
    return out;
}

const std::string* PromptBundle::section(const std::string& label) const {
    for (const auto& [l, text] : user_sections)
        if (l == label) return &text;
    return nullptr;
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::string invocation_key(const PromptBundle& prompt) {
    return sha256_hex(prompt.module_tag + "\x1f" + prompt.system_text + "\x1f" +
                      prompt.render_user());
}

std::string transcript_key(const PromptBundle& prompt, int sample_index) {
    return sha256_hex(invocation_key(prompt) + "\x1f" + std::to_string(sample_index));
}

std::string transcript_entry_to_json(const TranscriptEntry& e) {
    ordered_json j;
    j["key"] = e.key;
    j["invocation_key"] = e.invocation_key;
    j["module_tag"] = e.module_tag;
    ordered_json sections = ordered_json::array();
    for (const auto& [label, text] : e.prompt_sections)
        sections.push_back(ordered_json{{"label", label}, {"text", text}});
    j["prompt_sections"] = sections;
    j["sample_index"] = e.sample_index;
    j["response_text"] = e.response_text;
    j["input_tokens"] = e.usage.input_tokens;
    j["output_tokens"] = e.usage.output_tokens;
    j["timestamp"] = e.timestamp;
    return j.dump();
}

TranscriptEntry transcript_entry_from_json(const std::string& line) {
    ordered_json j = ordered_json::parse(line);
    TranscriptEntry e;
    e.key = j.at("key").get<std::string>();
    e.invocation_key = j.value("invocation_key", "");
    e.module_tag = j.value("module_tag", "");
    if (j.contains("prompt_sections"))
        for (auto& s : j["prompt_sections"])
            e.prompt_sections.emplace_back(s.at("label").get<std::string>(),
                                           s.at("text").get<std::string>());
    e.sample_index = j.value("sample_index", 1);
    e.response_text = j.at("response_text").get<std::string>();
    e.usage.input_tokens = j.value("input_tokens", std::int64_t{0});
    e.usage.output_tokens = j.value("output_tokens", std::int64_t{0});
    e.timestamp = j.value("timestamp", "");
    return e;
}

Completion EchoProvider::complete(const PromptBundle& prompt, int) {
    const std::string* code = prompt.section("Code and Tests");
    std::string body = code ? *code : prompt.render_user();
    Completion c;
    c.text = body;
    c.usage.input_tokens = static_cast<std::int64_t>(prompt.render_user().size() / 4);
    c.usage.output_tokens = static_cast<std::int64_t>(body.size() / 4);
    return c;
}

TranscriptStore::TranscriptStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    reload();
}

void TranscriptStore::reload() {
    std::lock_guard lk(mu_);
    by_key_.clear();
    if (!std::filesystem::exists(dir_)) return;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir_))
        if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        std::ifstream in(file);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            TranscriptEntry e = transcript_entry_from_json(line);
            by_key_[e.key] = std::move(e);
        }
    }
}

void TranscriptStore::open_run(const std::string& run_id) {
    std::lock_guard lk(mu_);
    active_file_ = dir_ / (run_id + ".jsonl");
}

void TranscriptStore::append(const TranscriptEntry& entry) {
    std::lock_guard lk(mu_);
    if (active_file_.empty()) active_file_ = dir_ / "run.jsonl";
    std::ofstream out(active_file_, std::ios::app | std::ios::binary);
    if (!out) throw WorkspaceError("cannot append transcript " + active_file_.string());
    out << transcript_entry_to_json(entry) << "\n";
    by_key_[entry.key] = entry;
}

std::optional<TranscriptEntry> TranscriptStore::lookup(const std::string& key) const {
    std::lock_guard lk(mu_);
    auto it = by_key_.find(key);
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
}

std::vector<TranscriptEntry> TranscriptStore::all() const {
    std::lock_guard lk(mu_);
    std::vector<TranscriptEntry> out;
    out.reserve(by_key_.size());
    for (const auto& [_, e] : by_key_) out.push_back(e);
    return out;
}

Gateway::Gateway(LlmMode mode, std::shared_ptr<Provider> provider,
                 std::shared_ptr<TranscriptStore> store)
    : mode_(mode), provider_(std::move(provider)), store_(std::move(store)) {
    if (mode_ != LlmMode::Replay && !provider_)
        throw ConfigError("live/record mode needs a provider");
    if (mode_ != LlmMode::Live && !store_)
        throw ConfigError("record/replay mode needs a transcript store");
}

namespace {

std::string iso_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

}  // namespace

Completion Gateway::sample_once(const PromptBundle& prompt, int sample_index) {
    const std::string key = transcript_key(prompt, sample_index);

    if (mode_ == LlmMode::Replay) {
        auto entry = store_->lookup(key);
        if (!entry)
            throw ReplayMiss("no transcript entry for key " + key + " (tag " + prompt.module_tag +
                             ", sample " + std::to_string(sample_index) + ")");
        return Completion{entry->response_text, entry->usage};
    }

    // Live and record: call the provider, with bounded retry on transient
    // failures.
    Completion c;
    int attempts = 0;
    for (;;) {
        try {
            c = provider_->complete(prompt, sample_index);
            break;
        } catch (const ProviderError&) {
            if (++attempts >= 3) throw;
            std::this_thread::sleep_for(std::chrono::milliseconds(200 * attempts));
        }
    }

    if (mode_ == LlmMode::Record) {
        TranscriptEntry e;
        e.key = key;
        e.invocation_key = invocation_key(prompt);
        e.module_tag = prompt.module_tag;
        e.prompt_sections = prompt.user_sections;
        e.sample_index = sample_index;
        e.response_text = c.text;
        e.usage = c.usage;
        e.timestamp = iso_now();
        store_->append(e);
    }
    return c;
}

std::vector<std::string> Gateway::complete(const PromptBundle& prompt, int sample_count) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(sample_count));
    for (int i = 1; i <= sample_count; ++i) {
        Completion c = sample_once(prompt, i);
        usage_ += c.usage;
        out.push_back(std::move(c.text));
    }
    ++invocations_;
    return out;
}

std::optional<std::string> extract_candidate(const std::string& response_text) {
    // Last fenced block wins; the opening fence may carry a language tag.
    std::size_t best_begin = std::string::npos;
    std::size_t best_end = std::string::npos;
    std::size_t pos = 0;
    while (true) {
        std::size_t open = response_text.find("```", pos);
        if (open == std::string::npos) break;
        std::size_t content = response_text.find('\n', open);
        if (content == std::string::npos) break;
        ++content;
        std::size_t close = response_text.find("```", content);
        if (close == std::string::npos) break;
        best_begin = content;
        best_end = close;
        pos = close + 3;
    }
    if (best_begin == std::string::npos) return std::nullopt;
    std::string body = response_text.substr(best_begin, best_end - best_begin);
    if (!body.empty() && body.back() == '\n') body.pop_back();
    return body;
}

std::shared_ptr<Provider> make_provider(const RunConfig& config) {
    if (config.provider == "echo") return std::make_shared<EchoProvider>();
    if (config.provider == "scripted") {
        if (config.scenario_path.empty())
            throw ConfigError("scripted provider needs llm.scenario (a scenario JSON path)");
        return std::make_shared<ScriptedProvider>(config.scenario_path);
    }
    if (config.provider == "openai")
        return std::make_shared<OpenAiProvider>(config.api_base_url, config.model,
                                                config.api_key_env, config.decoding_params);
    throw ConfigError("unknown provider: " + config.provider);
}

}  // namespace veristruct
