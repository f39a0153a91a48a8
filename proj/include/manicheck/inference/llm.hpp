#pragma once

#include "manicheck/core/json_io.hpp"
#include "manicheck/retrieval/http.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace manicheck::inference {

// Chat completion. Transport problems throw ProviderError with
// transport() == true; everything else is a non-transport ProviderError.
// Implementations must be safe to share across threads.
class LlmProvider {
public:
    virtual ~LlmProvider() = default;
    virtual std::string complete(const std::string& system_text, const std::string& user_text,
                                 double temperature) = 0;
};

// Key of a scripted response: SHA-256 of system_text, a NUL byte, user_text.
std::string prompt_digest(std::string_view system_text, std::string_view user_text);

// Replays canned responses. File format:
//   {"<prompt digest>": ["run 1", "run 2", "run 3"], ...,
//    "by_user_text": {"<exact user text>": [...]}}
// The n-th request for a key returns entry n modulo the list length. Digest
// matches win over the by_user_text fallback. An unmatched prompt throws a
// non-transport ProviderError naming its digest.
class ScriptedLlmProvider final : public LlmProvider {
public:
    ScriptedLlmProvider() = default;
    explicit ScriptedLlmProvider(const Json& script);
    static std::shared_ptr<ScriptedLlmProvider> from_file(const std::filesystem::path& path);

    void add_for_digest(std::string digest, std::vector<std::string> responses);
    void add_for_prompt(std::string_view system_text, std::string_view user_text,
                        std::vector<std::string> responses);
    void add_for_user_text(std::string user_text, std::vector<std::string> responses);

    std::string complete(const std::string& system_text, const std::string& user_text,
                         double temperature) override;

    std::size_t calls() const;

private:
    struct Script {
        std::vector<std::string> responses;
        std::size_t next = 0;
    };

    mutable std::mutex mu_;
    std::map<std::string, Script> by_digest_;
    std::map<std::string, Script> by_user_;
    std::size_t calls_ = 0;
};

// POST {model, messages: [{role, content}], temperature, stream: false}.
// Reads the reply from message.content (Ollama), choices[0].message.content
// (OpenAI) or response.
class LiveLlmProvider final : public LlmProvider {
public:
    LiveLlmProvider(std::string endpoint, std::string model, std::shared_ptr<net::HttpClient> http,
                    std::string api_key = {}, double timeout_seconds = 120.0);

    std::string complete(const std::string& system_text, const std::string& user_text,
                         double temperature) override;

private:
    std::string endpoint_;
    std::string model_;
    std::shared_ptr<net::HttpClient> http_;
    std::string api_key_;
    double timeout_seconds_;
};

}  // namespace manicheck::inference
