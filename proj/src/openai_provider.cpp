#include <cstdlib>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"
#include "json.hpp"
#include "veristruct/errors.hpp"
#include "veristruct/llm.hpp"

namespace veristruct {

using nlohmann::json;

OpenAiProvider::OpenAiProvider(std::string base_url, std::string model, std::string api_key_env,
                               std::string decoding_params)
    : base_url_(std::move(base_url)),
      model_(std::move(model)),
      api_key_env_(std::move(api_key_env)),
      decoding_params_(std::move(decoding_params)) {}

Completion OpenAiProvider::complete(const PromptBundle& prompt, int /*sample_index*/) {
    const char* key = std::getenv(api_key_env_.c_str());
    if (!key || !*key)
        throw ProviderError("API key environment variable " + api_key_env_ + " is not set");

    json body;
    body["model"] = model_;
    body["messages"] = json::array({
        json{{"role", "system"}, {"content", prompt.system_text}},
        json{{"role", "user"}, {"content", prompt.render_user()}},
    });
    if (!decoding_params_.empty()) {
        json params = json::parse(decoding_params_, nullptr, false);
        if (!params.is_discarded())
            for (auto& [k, v] : params.items()) body[k] = v;
    }

    httplib::Client client(base_url_);
    client.set_read_timeout(300, 0);
    client.set_connection_timeout(30, 0);
    httplib::Headers headers = {{"Authorization", std::string("Bearer ") + key}};

    auto res = client.Post("/v1/chat/completions", headers, body.dump(), "application/json");
    if (!res) throw ProviderError("request failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw ProviderError("provider returned HTTP " + std::to_string(res->status) + ": " +
                            res->body);

    json reply = json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("choices") || reply["choices"].empty())
        throw ProviderError("malformed provider response");

    Completion c;
    c.text = reply["choices"][0]["message"]["content"].get<std::string>();
    if (reply.contains("usage")) {
        c.usage.input_tokens = reply["usage"].value("prompt_tokens", std::int64_t{0});
        c.usage.output_tokens = reply["usage"].value("completion_tokens", std::int64_t{0});
    }
    return c;
}

}  // namespace veristruct
