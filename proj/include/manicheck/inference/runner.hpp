#pragma once

#include "manicheck/core/model.hpp"
#include "manicheck/inference/llm.hpp"
#include "manicheck/inference/prompt.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace manicheck::inference {

inline constexpr double kDefaultTemperature = 0.1;
inline constexpr std::size_t kDefaultRuns = 3;

struct InferenceOptions {
    double temperature = kDefaultTemperature;
    std::size_t runs = kDefaultRuns;  // must be odd
    std::string claim_id;             // named in errors; optional

    // Throws ConfigError for an even or zero run count or a temperature
    // outside [0, 2].
    void validate() const;
};

// One complete() call parsed by parse_verdict. A transport failure is
// retried once; a second failure is rethrown as ProviderError naming the
// claim. Non-transport failures are not retried.
Verdict run_single(std::string_view claim, std::string_view context, const PromptTemplate& tpl,
                   LlmProvider& provider, const InferenceOptions& options = {});

// options.runs sequential run_single calls and their majority label.
// context_digest and timing are left for the caller to fill.
Prediction run_majority(std::string_view claim, std::string_view context, const PromptTemplate& tpl,
                        LlmProvider& provider, const InferenceOptions& options = {});

}  // namespace manicheck::inference
