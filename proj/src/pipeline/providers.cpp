#include "manicheck/pipeline/providers.hpp"

#include "manicheck/core/errors.hpp"

namespace manicheck::pipeline {

CallCounts CallCounter::snapshot() const noexcept {
    return CallCounts{search.load(), fetch.load(), embed.load(), llm.load()};
}

void CallCounter::reset() noexcept {
    search = 0;
    fetch = 0;
    embed = 0;
    llm = 0;
}

CountingSearch::CountingSearch(std::shared_ptr<retrieval::SearchProvider> inner,
                               std::shared_ptr<CallCounter> counter)
    : inner_(std::move(inner)), counter_(std::move(counter)) {}

std::vector<retrieval::SearchHit> CountingSearch::search(const std::string& query, std::size_t max_results,
                                                         const std::optional<std::string>& locale) {
    ++counter_->search;
    return inner_->search(query, max_results, locale);
}

CountingHttp::CountingHttp(std::shared_ptr<net::HttpClient> inner, std::shared_ptr<CallCounter> counter)
    : inner_(std::move(inner)), counter_(std::move(counter)) {}

net::HttpResponse CountingHttp::send(const net::HttpRequest& request) {
    ++counter_->fetch;
    return inner_->send(request);
}

CountingEmbedding::CountingEmbedding(std::shared_ptr<context::EmbeddingProvider> inner,
                                     std::shared_ptr<CallCounter> counter)
    : inner_(std::move(inner)), counter_(std::move(counter)) {}

std::vector<Vector> CountingEmbedding::embed(const std::vector<std::string>& texts) {
    ++counter_->embed;
    return inner_->embed(texts);
}

std::size_t CountingEmbedding::dimension() const { return inner_->dimension(); }

CountingLlm::CountingLlm(std::shared_ptr<inference::LlmProvider> inner, std::shared_ptr<CallCounter> counter)
    : inner_(std::move(inner)), counter_(std::move(counter)) {}

std::string CountingLlm::complete(const std::string& system_text, const std::string& user_text,
                                  double temperature) {
    ++counter_->llm;
    return inner_->complete(system_text, user_text, temperature);
}

Providers resolve_providers(const PipelineConfig& config) {
    const auto& pc = config.providers;
    Providers p;
    std::shared_ptr<net::HttpClient> live_http;
    auto live = [&] {
        if (!live_http) live_http = std::make_shared<net::LiveHttpClient>();
        return live_http;
    };

    if (pc.search == "mock") {
        if (!pc.search_fixture) throw ConfigError("search.provider = mock needs search.fixture");
        p.search = retrieval::MockSearchProvider::from_file(*pc.search_fixture);
    } else if (pc.search == "live") {
        if (pc.search_url.empty()) throw ConfigError("search.provider = live needs SEARCH_API_URL");
        p.search = std::make_shared<retrieval::LiveSearchProvider>(pc.search_url, pc.search_api_key, live());
    }

    if (pc.pages_fixture) {
        p.http = net::FixtureHttpClient::from_manifest(*pc.pages_fixture);
    } else if (pc.search == "live") {
        p.http = live();
    } else {
        p.http = std::make_shared<net::FixtureHttpClient>();
    }

    if (pc.embedding == "mock16") {
        p.embedder = std::make_shared<context::MockHashEmbedding>();
    } else if (pc.embedding == "live") {
        if (pc.embedding_url.empty() || pc.embedding_model.empty()) {
            throw ConfigError("embedding.provider = live needs EMBED_API_URL and EMBED_MODEL");
        }
        p.embedder = std::make_shared<context::LiveEmbeddingProvider>(pc.embedding_url, pc.embedding_model, live());
    }

    if (pc.llm == "scripted") {
        if (!pc.llm_script) throw ConfigError("llm.provider = scripted needs llm.script");
        p.llm = inference::ScriptedLlmProvider::from_file(*pc.llm_script);
    } else if (pc.llm == "live") {
        if (pc.llm_url.empty() || pc.llm_model.empty()) {
            throw ConfigError("llm.provider = live needs LLM_API_URL and LLM_MODEL");
        }
        p.llm = std::make_shared<inference::LiveLlmProvider>(pc.llm_url, pc.llm_model, live(), pc.llm_api_key);
    }

    if (config.prompt_template) p.prompt = inference::PromptTemplate::load(*config.prompt_template);
    return p;
}

Providers with_counters(Providers p, const std::shared_ptr<CallCounter>& counter) {
    if (p.search) p.search = std::make_shared<CountingSearch>(p.search, counter);
    if (p.http) p.http = std::make_shared<CountingHttp>(p.http, counter);
    if (p.embedder) p.embedder = std::make_shared<CountingEmbedding>(p.embedder, counter);
    if (p.llm) p.llm = std::make_shared<CountingLlm>(p.llm, counter);
    return p;
}

}  // namespace manicheck::pipeline
