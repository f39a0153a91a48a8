#include "manicheck/pipeline/config.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/hash.hpp"
#include "manicheck/core/json_io.hpp"
#include "manicheck/core/text.hpp"

#include <charconv>
#include <cstdlib>
#include <set>

namespace manicheck::pipeline {
namespace {

const std::set<std::string>& path_keys() {
    static const std::set<std::string> keys{"search.fixture", "fetch.fixture", "cache.dir",
                                            "llm.script", "prompt.template", "prompts.dir"};
    return keys;
}

bool is_secret(const std::string& key) { return key.find("api_key") != std::string::npos; }

std::size_t to_size(const Settings& s, const std::string& key) {
    std::string v = s.get(key);
    std::size_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) {
        throw ConfigError(key + ": expected a non-negative integer, got \"" + v + "\"");
    }
    return out;
}

double to_double(const Settings& s, const std::string& key) {
    std::string v = s.get(key);
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw ConfigError(key + ": expected a number, got \"" + v + "\"");
}

bool to_bool(const Settings& s, const std::string& key) {
    std::string v = text::ascii_lower(s.get(key));
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no" || v.empty()) return false;
    throw ConfigError(key + ": expected true or false, got \"" + v + "\"");
}

std::optional<std::filesystem::path> to_path(const Settings& s, const std::string& key) {
    if (!s.has(key)) return std::nullopt;
    return std::filesystem::path(s.get(key));
}

}  // namespace

std::string_view to_string(Mode m) noexcept { return m == Mode::Ablation ? "ablation" : "retrieval"; }

Mode parse_mode(std::string_view s) {
    if (s == "retrieval") return Mode::Retrieval;
    if (s == "ablation") return Mode::Ablation;
    throw ConfigError("mode must be retrieval or ablation, got \"" + std::string(s) + "\"");
}

const std::map<std::string, std::string>& Settings::defaults() {
    static const std::map<std::string, std::string> d{
        {"k_documents", "3"},
        {"retrieved_chunks", "5"},
        {"runs", "3"},
        {"temperature", "0.1"},
        {"chunk_size", "100"},
        {"chunk_overlap", "20"},
        {"max_context_chars", "4000"},
        {"query_words", "32"},
        {"mode", "retrieval"},
        {"parallel", "4"},
        {"search.provider", ""},
        {"search.fixture", ""},
        {"search.url", ""},
        {"search.api_key", ""},
        {"fetch.fixture", ""},
        {"fetch.timeout", "15"},
        {"fetch.max_bytes", "4194304"},
        {"fetch.parallelism", "4"},
        {"cache.dir", ""},
        {"cache.only", "false"},
        {"embedding.provider", ""},
        {"embedding.url", ""},
        {"embedding.model", ""},
        {"llm.provider", ""},
        {"llm.script", ""},
        {"llm.url", ""},
        {"llm.model", ""},
        {"llm.api_key", ""},
        {"prompt.template", ""},
        {"prompts.dir", ""},
    };
    return d;
}

void Settings::load_file(const std::filesystem::path& path) {
    try {
        parse(read_file(path), path.parent_path());
    } catch (const NotFoundError& e) {
        throw ConfigError(e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void Settings::parse(std::string_view content, const std::filesystem::path& base_dir) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        std::size_t end = content.find('\n', pos);
        if (end == std::string_view::npos) end = content.size();
        std::string_view line = content.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
        // A '#' starts a comment unless it sits inside quotes.
        std::size_t hash = std::string_view::npos;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                hash = i;
                break;
            }
        }
        line = text::trim_view(line.substr(0, hash));
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where() + "expected key = value");
        std::string key = text::trim(line.substr(0, eq));
        std::string value = text::trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (!defaults().count(key)) throw ConfigError(where() + "unknown key \"" + key + "\"");
        if (path_keys().count(key) && !value.empty() && !base_dir.empty()) {
            std::filesystem::path p(value);
            if (p.is_relative()) value = (base_dir / p).lexically_normal().string();
        }
        values_[key] = value;
        if (end == content.size()) break;
    }
}

void Settings::apply_environment(const EnvLookup& lookup) {
    static const std::pair<const char*, const char*> kMap[] = {
        {"SEARCH_API_KEY", "search.api_key"}, {"SEARCH_API_URL", "search.url"},
        {"EMBED_API_URL", "embedding.url"},   {"EMBED_MODEL", "embedding.model"},
        {"LLM_API_URL", "llm.url"},           {"LLM_MODEL", "llm.model"},
        {"LLM_API_KEY", "llm.api_key"},       {"MANICHECK_CACHE_DIR", "cache.dir"},
    };
    for (const auto& [env, key] : kMap) {
        if (auto v = lookup(env); v && !v->empty()) values_[key] = *v;
    }
}

void Settings::apply_environment() {
    apply_environment([](const char* name) -> std::optional<std::string> {
        const char* v = std::getenv(name);
        if (!v) return std::nullopt;
        return std::string(v);
    });
}

void Settings::set(const std::string& key, std::string value) {
    if (!defaults().count(key)) throw ConfigError("unknown setting \"" + key + "\"");
    values_[key] = std::move(value);
}

std::string Settings::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown setting \"" + key + "\"");
    return it->second;
}

bool Settings::has(const std::string& key) const { return !get(key).empty(); }

PipelineConfig PipelineConfig::from_settings(const Settings& s) {
    PipelineConfig c;
    c.k_documents = to_size(s, "k_documents");
    c.retrieved_chunks = to_size(s, "retrieved_chunks");
    c.runs = to_size(s, "runs");
    c.temperature = to_double(s, "temperature");
    c.splitter.chunk_size = to_size(s, "chunk_size");
    c.splitter.overlap = to_size(s, "chunk_overlap");
    c.max_context_chars = to_size(s, "max_context_chars");
    c.query_words = to_size(s, "query_words");
    c.mode = parse_mode(s.get("mode"));
    c.parallel = to_size(s, "parallel");

    c.fetch.timeout_seconds = to_double(s, "fetch.timeout");
    c.fetch.max_bytes = to_size(s, "fetch.max_bytes");
    c.fetch.parallelism = to_size(s, "fetch.parallelism");
    c.fetch.cache_dir = to_path(s, "cache.dir");
    c.fetch.cache_only = to_bool(s, "cache.only");

    auto& p = c.providers;
    p.search_fixture = to_path(s, "search.fixture");
    p.search_url = s.get("search.url");
    p.search_api_key = s.get("search.api_key");
    p.pages_fixture = to_path(s, "fetch.fixture");
    p.search = s.has("search.provider") ? s.get("search.provider")
               : p.search_fixture       ? "mock"
               : !p.search_url.empty()  ? "live"
                                        : "";
    p.embedding_url = s.get("embedding.url");
    p.embedding_model = s.get("embedding.model");
    p.embedding = s.has("embedding.provider") ? s.get("embedding.provider")
                  : !p.embedding_url.empty()  ? "live"
                                              : "mock16";
    p.llm_script = to_path(s, "llm.script");
    p.llm_url = s.get("llm.url");
    p.llm_model = s.get("llm.model");
    p.llm_api_key = s.get("llm.api_key");
    p.llm = s.has("llm.provider") ? s.get("llm.provider")
            : p.llm_script        ? "scripted"
            : !p.llm_url.empty()  ? "live"
                                  : "";

    c.prompt_template = to_path(s, "prompt.template");
    c.prompts_dir = to_path(s, "prompts.dir");

    std::string canonical;
    for (const auto& [key, value] : s.values()) {
        if (is_secret(key)) continue;
        canonical += key + "=" + value + "\n";
    }
    c.digest = sha256_hex(canonical);
    c.validate();
    return c;
}

void PipelineConfig::validate() const {
    if (k_documents == 0) throw ConfigError("k_documents must be positive");
    if (retrieved_chunks == 0) throw ConfigError("retrieved_chunks must be positive");
    if (runs == 0 || runs % 2 == 0) throw ConfigError("runs must be a positive odd number");
    if (!(temperature >= 0.0 && temperature <= 2.0)) throw ConfigError("temperature must lie in [0, 2]");
    if (max_context_chars == 0) throw ConfigError("max_context_chars must be positive");
    if (query_words == 0) throw ConfigError("query_words must be positive");
    if (parallel == 0) throw ConfigError("parallel must be positive");
    splitter.validate();
    fetch.validate();
    auto one_of = [](const std::string& v, std::initializer_list<const char*> allowed, const char* what) {
        if (v.empty()) return;
        for (const char* a : allowed) {
            if (v == a) return;
        }
        throw ConfigError(std::string(what) + ": unknown provider \"" + v + "\"");
    };
    one_of(providers.search, {"mock", "live"}, "search.provider");
    one_of(providers.embedding, {"mock16", "live"}, "embedding.provider");
    one_of(providers.llm, {"scripted", "live"}, "llm.provider");
}

}  // namespace manicheck::pipeline
