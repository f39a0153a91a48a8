#include "manicheck/inference/llm.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/hash.hpp"

namespace manicheck::inference {

std::string prompt_digest(std::string_view system_text, std::string_view user_text) {
    std::string buf;
    buf.reserve(system_text.size() + user_text.size() + 1);
    buf.append(system_text);
    buf.push_back('\0');
    buf.append(user_text);
    return sha256_hex(buf);
}

ScriptedLlmProvider::ScriptedLlmProvider(const Json& script) {
    if (!script.is_object()) throw FormatError("LLM script must be a JSON object");
    auto responses = [](const Json& arr, const std::string& key) {
        if (!arr.is_array() || arr.empty()) {
            throw FormatError("LLM script entry \"" + key + "\" must be a non-empty array");
        }
        std::vector<std::string> out;
        for (const auto& r : arr) {
            if (!r.is_string()) throw FormatError("LLM script entry \"" + key + "\" must hold strings");
            out.push_back(r.get<std::string>());
        }
        return out;
    };
    for (const auto& [key, value] : script.items()) {
        if (key == "by_user_text") {
            if (!value.is_object()) throw FormatError("\"by_user_text\" must be an object");
            for (const auto& [user, arr] : value.items()) add_for_user_text(user, responses(arr, user));
        } else {
            add_for_digest(key, responses(value, key));
        }
    }
}

std::shared_ptr<ScriptedLlmProvider> ScriptedLlmProvider::from_file(const std::filesystem::path& path) {
    return std::make_shared<ScriptedLlmProvider>(read_json_file(path));
}

void ScriptedLlmProvider::add_for_digest(std::string digest, std::vector<std::string> responses) {
    std::lock_guard lock(mu_);
    by_digest_[std::move(digest)] = Script{std::move(responses), 0};
}

void ScriptedLlmProvider::add_for_prompt(std::string_view system_text, std::string_view user_text,
                                         std::vector<std::string> responses) {
    add_for_digest(prompt_digest(system_text, user_text), std::move(responses));
}

void ScriptedLlmProvider::add_for_user_text(std::string user_text, std::vector<std::string> responses) {
    std::lock_guard lock(mu_);
    by_user_[std::move(user_text)] = Script{std::move(responses), 0};
}

std::string ScriptedLlmProvider::complete(const std::string& system_text, const std::string& user_text,
                                          double) {
    std::string digest = prompt_digest(system_text, user_text);
    std::lock_guard lock(mu_);
    ++calls_;
    Script* script = nullptr;
    if (auto it = by_digest_.find(digest); it != by_digest_.end()) {
        script = &it->second;
    } else if (auto u = by_user_.find(user_text); u != by_user_.end()) {
        script = &u->second;
    }
    if (!script || script->responses.empty()) {
        throw ProviderError("llm", "no scripted response for prompt digest " + digest, false);
    }
    const std::string& out = script->responses[script->next % script->responses.size()];
    ++script->next;
    return out;
}

std::size_t ScriptedLlmProvider::calls() const {
    std::lock_guard lock(mu_);
    return calls_;
}

LiveLlmProvider::LiveLlmProvider(std::string endpoint, std::string model,
                                 std::shared_ptr<net::HttpClient> http, std::string api_key,
                                 double timeout_seconds)
    : endpoint_(std::move(endpoint)), model_(std::move(model)), http_(std::move(http)),
      api_key_(std::move(api_key)), timeout_seconds_(timeout_seconds) {
    if (!net::is_http_url(endpoint_)) throw ConfigError("LLM endpoint is not an http(s) URL: " + endpoint_);
}

std::string LiveLlmProvider::complete(const std::string& system_text, const std::string& user_text,
                                      double temperature) {
    Json payload{{"model", model_},
                 {"messages", Json::array({Json{{"role", "system"}, {"content", system_text}},
                                           Json{{"role", "user"}, {"content", user_text}}})},
                 {"temperature", temperature},
                 {"stream", false}};
    net::HttpRequest req;
    req.method = "POST";
    req.url = endpoint_;
    req.timeout_seconds = timeout_seconds_;
    req.content_type = "application/json";
    req.body = dump_json(payload);
    if (!api_key_.empty()) req.headers.emplace_back("Authorization", "Bearer " + api_key_);

    net::HttpResponse resp = http_->send(req);
    if (resp.status < 200 || resp.status >= 300) {
        bool transient = resp.status >= 500 || resp.status == 429;
        throw ProviderError("llm", "HTTP " + std::to_string(resp.status), transient);
    }
    try {
        Json body = Json::parse(resp.body);
        if (auto m = body.find("message"); m != body.end() && m->contains("content")) {
            return (*m)["content"].get<std::string>();
        }
        if (auto c = body.find("choices"); c != body.end() && c->is_array() && !c->empty()) {
            return (*c)[0].at("message").at("content").get<std::string>();
        }
        if (auto r = body.find("response"); r != body.end()) return r->get<std::string>();
    } catch (const Json::exception& e) {
        throw ProviderError("llm", std::string("malformed response: ") + e.what(), false);
    }
    throw ProviderError("llm", "response carries no assistant message", false);
}

}  // namespace manicheck::inference
