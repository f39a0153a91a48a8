#include "manicheck/inference/runner.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/text.hpp"
#include "manicheck/inference/verdict.hpp"

namespace manicheck::inference {
namespace {

std::string claim_label(const InferenceOptions& options, std::string_view claim) {
    if (!options.claim_id.empty()) return "claim " + options.claim_id;
    return "claim \"" + text::trim(claim) + "\"";
}

}  // namespace

void InferenceOptions::validate() const {
    if (runs == 0 || runs % 2 == 0) throw ConfigError("runs must be a positive odd number");
    if (!(temperature >= 0.0 && temperature <= 2.0)) {
        throw ConfigError("temperature must lie in [0, 2]");
    }
}

Verdict run_single(std::string_view claim, std::string_view context, const PromptTemplate& tpl,
                   LlmProvider& provider, const InferenceOptions& options) {
    Prompt prompt = build_prompt(claim, context, tpl);
    for (int attempt = 0;; ++attempt) {
        try {
            return parse_verdict(provider.complete(prompt.system_text, prompt.user_text, options.temperature));
        } catch (const ProviderError& e) {
            if (e.transport() && attempt == 0) continue;
            throw ProviderError(e.stage(), claim_label(options, claim) + ": " + e.what(), e.transport());
        }
    }
}

Prediction run_majority(std::string_view claim, std::string_view context, const PromptTemplate& tpl,
                        LlmProvider& provider, const InferenceOptions& options) {
    options.validate();
    Prediction p;
    p.claim = text::trim(claim);
    std::vector<VerdictLabel> labels;
    for (std::size_t i = 0; i < options.runs; ++i) {
        p.runs.push_back(run_single(claim, context, tpl, provider, options));
        labels.push_back(p.runs.back().label);
    }
    p.majority = majority_label(labels);
    return p;
}

}  // namespace manicheck::inference
