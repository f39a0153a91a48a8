#pragma once

#include "manicheck/core/model.hpp"
#include "manicheck/pipeline/config.hpp"
#include "manicheck/pipeline/providers.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace manicheck::pipeline {

struct DetectRequest {
    std::string claim;
    std::optional<Mode> mode;  // the config's mode when empty
    std::optional<std::string> region;
    std::optional<CalendarDate> date;
    std::string claim_id;  // named in errors
    // Evidence mode: these texts stand in for retrieved pages and no search
    // or fetch happens.
    std::optional<std::vector<std::string>> evidence;
};

// The detector f(claim) -> verdict: retrieval, context building and majority
// inference. Safe to call from several threads once constructed.
class Detector {
public:
    Detector(PipelineConfig config, Providers providers);

    // Resolves providers from `config` and wraps them in call counters.
    static Detector from_config(const PipelineConfig& config);

    // Retrieval mode: search, crawl, chunk, embed, rank, assemble, infer.
    // Ablation mode: infer with the no-context prompt. When retrieval leaves
    // no usable context the claim is answered without context and the
    // Prediction carries a warning. Provider and configuration errors
    // propagate with their stage names.
    Prediction detect(const DetectRequest& request);
    Prediction detect(std::string_view claim);

    const PipelineConfig& config() const noexcept { return config_; }
    CallCounts counts() const noexcept { return counter_->snapshot(); }
    void reset_counts() noexcept { counter_->reset(); }

private:
    PipelineConfig config_;
    Providers providers_;
    std::shared_ptr<CallCounter> counter_;
};

}  // namespace manicheck::pipeline
