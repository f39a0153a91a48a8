#include "manicheck/pipeline/detector.hpp"

#include "manicheck/context/builder.hpp"
#include "manicheck/core/errors.hpp"
#include "manicheck/core/text.hpp"
#include "manicheck/inference/runner.hpp"
#include "manicheck/retrieval/fetch.hpp"
#include "manicheck/retrieval/search.hpp"

#include <chrono>

namespace manicheck::pipeline {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

Detector::Detector(PipelineConfig config, Providers providers)
    : config_(std::move(config)), counter_(std::make_shared<CallCounter>()) {
    config_.validate();
    providers_ = with_counters(std::move(providers), counter_);
}

Detector Detector::from_config(const PipelineConfig& config) {
    return Detector(config, resolve_providers(config));
}

Prediction Detector::detect(std::string_view claim) {
    DetectRequest r;
    r.claim = std::string(claim);
    return detect(r);
}

Prediction Detector::detect(const DetectRequest& request) {
    if (text::trim_view(request.claim).empty()) throw InvalidArgument("claim must be non-empty");
    if (!providers_.llm) throw ConfigError("llm: no provider configured (set llm.script or LLM_API_URL)");

    Mode mode = request.mode.value_or(config_.mode);
    bool evidence = request.evidence.has_value();
    std::string claim = text::trim(request.claim);

    Prediction p;
    p.mode = evidence ? "evidence" : std::string(to_string(mode));
    p.region = request.region;
    p.date = request.date;
    std::string context_text;

    if (evidence || mode == Mode::Retrieval) {
        std::vector<Document> docs;
        auto t0 = Clock::now();
        try {
            if (evidence) {
                int rank = 0;
                for (const auto& e : *request.evidence) {
                    if (text::trim_view(e).empty()) continue;
                    Document d;
                    d.url = "evidence:" + std::to_string(++rank);
                    d.rank = rank;
                    d.text = e;
                    docs.push_back(std::move(d));
                }
                if (docs.empty()) throw EmptyContextError("no evidence texts supplied");
            } else {
                if (!providers_.search) {
                    throw ConfigError("search: no provider configured (set search.fixture or SEARCH_API_URL)");
                }
                std::string query = retrieval::build_search_query(claim, config_.query_words);
                docs = retrieval::collect_top_k(query, config_.k_documents, *providers_.search, config_.fetch,
                                                *providers_.http, request.region);
            }
            p.elapsed.retrieval_seconds = seconds_since(t0);

            auto t1 = Clock::now();
            if (!providers_.embedder) throw ConfigError("embedding: no provider configured");
            auto built = context::build_context(claim, docs, config_.splitter, *providers_.embedder,
                                                config_.retrieved_chunks, config_.max_context_chars);
            p.elapsed.context_build_seconds = seconds_since(t1);
            context_text = std::move(built.text);
            for (const auto& d : docs) p.context_digest.push_back(SourceRef{d.url, d.rank});
        } catch (const EmptyContextError& e) {
            p.elapsed.retrieval_seconds = seconds_since(t0);
            p.warnings.push_back(std::string("no usable context (") + e.what() +
                                 "); answered without retrieved context");
            p.context_digest.clear();
            context_text.clear();
        }
    }

    inference::InferenceOptions opts;
    opts.temperature = config_.temperature;
    opts.runs = config_.runs;
    opts.claim_id = request.claim_id;
    auto t2 = Clock::now();
    Prediction voted = inference::run_majority(claim, context_text, providers_.prompt, *providers_.llm, opts);
    p.elapsed.inference_seconds = seconds_since(t2);
    p.claim = std::move(voted.claim);
    p.runs = std::move(voted.runs);
    p.majority = voted.majority;
    return p;
}

}  // namespace manicheck::pipeline
