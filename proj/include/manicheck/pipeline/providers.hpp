#pragma once

#include "manicheck/context/embedding.hpp"
#include "manicheck/inference/llm.hpp"
#include "manicheck/inference/prompt.hpp"
#include "manicheck/pipeline/config.hpp"
#include "manicheck/retrieval/http.hpp"
#include "manicheck/retrieval/search.hpp"

#include <atomic>
#include <cstddef>
#include <memory>
#include <optional>

namespace manicheck::pipeline {

// Provider calls since construction (or the last reset).
struct CallCounts {
    std::size_t search = 0;
    std::size_t fetch = 0;  // HTTP requests issued by the page fetcher
    std::size_t embed = 0;  // embed() batches, the claim's included
    std::size_t llm = 0;

    friend bool operator==(const CallCounts&, const CallCounts&) = default;
};

class CallCounter {
public:
    CallCounts snapshot() const noexcept;
    void reset() noexcept;

    std::atomic<std::size_t> search{0}, fetch{0}, embed{0}, llm{0};
};

// Decorators that count calls before delegating.
class CountingSearch final : public retrieval::SearchProvider {
public:
    CountingSearch(std::shared_ptr<retrieval::SearchProvider> inner, std::shared_ptr<CallCounter> counter);
    std::vector<retrieval::SearchHit> search(const std::string& query, std::size_t max_results,
                                             const std::optional<std::string>& locale) override;

private:
    std::shared_ptr<retrieval::SearchProvider> inner_;
    std::shared_ptr<CallCounter> counter_;
};

class CountingHttp final : public net::HttpClient {
public:
    CountingHttp(std::shared_ptr<net::HttpClient> inner, std::shared_ptr<CallCounter> counter);
    net::HttpResponse send(const net::HttpRequest& request) override;

private:
    std::shared_ptr<net::HttpClient> inner_;
    std::shared_ptr<CallCounter> counter_;
};

class CountingEmbedding final : public context::EmbeddingProvider {
public:
    CountingEmbedding(std::shared_ptr<context::EmbeddingProvider> inner, std::shared_ptr<CallCounter> counter);
    std::vector<Vector> embed(const std::vector<std::string>& texts) override;
    std::size_t dimension() const override;

private:
    std::shared_ptr<context::EmbeddingProvider> inner_;
    std::shared_ptr<CallCounter> counter_;
};

class CountingLlm final : public inference::LlmProvider {
public:
    CountingLlm(std::shared_ptr<inference::LlmProvider> inner, std::shared_ptr<CallCounter> counter);
    std::string complete(const std::string& system_text, const std::string& user_text,
                         double temperature) override;

private:
    std::shared_ptr<inference::LlmProvider> inner_;
    std::shared_ptr<CallCounter> counter_;
};

// Everything detect() needs. Members may be null when the corresponding
// stage is not configured; the pipeline reports that as a ConfigError at the
// point of use.
struct Providers {
    std::shared_ptr<retrieval::SearchProvider> search;
    std::shared_ptr<net::HttpClient> http;
    std::shared_ptr<context::EmbeddingProvider> embedder;
    std::shared_ptr<inference::LlmProvider> llm;
    inference::PromptTemplate prompt = inference::PromptTemplate::default_template();
};

// Builds the providers named by `config`. Live providers share one
// LiveHttpClient; mock search without a pages fixture gets an empty
// FixtureHttpClient, so every fetch fails offline.
Providers resolve_providers(const PipelineConfig& config);

// Wraps each provider in its counting decorator.
Providers with_counters(Providers providers, const std::shared_ptr<CallCounter>& counter);

}  // namespace manicheck::pipeline
