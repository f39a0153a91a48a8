#pragma once

#include "manicheck/context/splitter.hpp"
#include "manicheck/retrieval/fetch.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace manicheck::pipeline {

enum class Mode { Retrieval, Ablation };

std::string_view to_string(Mode m) noexcept;
Mode parse_mode(std::string_view s);

// Flat key/value settings. Later layers override earlier ones:
// defaults < config file < environment < command-line flags.
class Settings {
public:
    // Every key the pipeline understands, with its default ("" = unset).
    static const std::map<std::string, std::string>& defaults();

    // `key = value` lines, '#' comments, optional quotes around the value.
    // Unknown keys are ConfigErrors naming the line. Relative paths in path
    // keys resolve against the file's directory.
    void load_file(const std::filesystem::path& path);
    void parse(std::string_view text, const std::filesystem::path& base_dir = {});

    // SEARCH_API_KEY, SEARCH_API_URL, EMBED_API_URL, EMBED_MODEL, LLM_API_URL,
    // LLM_MODEL, LLM_API_KEY and MANICHECK_CACHE_DIR.
    using EnvLookup = std::function<std::optional<std::string>(const char*)>;
    void apply_environment(const EnvLookup& lookup);
    void apply_environment();  // the process environment

    // Throws ConfigError for an unknown key.
    void set(const std::string& key, std::string value);
    std::string get(const std::string& key) const;
    bool has(const std::string& key) const;  // set to a non-empty value

    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_ = defaults();
};

// Which implementation backs each provider.
struct ProviderConfig {
    std::string search;  // "mock" or "live"
    std::optional<std::filesystem::path> search_fixture;
    std::string search_url;
    std::string search_api_key;
    std::optional<std::filesystem::path> pages_fixture;  // FixtureHttpClient manifest

    std::string embedding;  // "mock16" or "live"
    std::string embedding_url;
    std::string embedding_model;

    std::string llm;  // "scripted" or "live"
    std::optional<std::filesystem::path> llm_script;
    std::string llm_url;
    std::string llm_model;
    std::string llm_api_key;
};

struct PipelineConfig {
    std::size_t k_documents = 3;
    std::size_t retrieved_chunks = 5;
    std::size_t runs = 3;
    double temperature = 0.1;
    context::SplitterConfig splitter;
    std::size_t max_context_chars = 4000;
    std::size_t query_words = 32;
    Mode mode = Mode::Retrieval;
    std::size_t parallel = 4;
    retrieval::FetchPolicy fetch;
    ProviderConfig providers;
    std::optional<std::filesystem::path> prompt_template;
    std::optional<std::filesystem::path> prompts_dir;  // dataset generation prompts

    // Hex SHA-256 of the canonical non-secret settings.
    std::string digest;

    static PipelineConfig from_settings(const Settings& settings);

    // Throws ConfigError when a value is out of range (runs must be odd).
    void validate() const;
};

}  // namespace manicheck::pipeline
