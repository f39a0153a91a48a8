#pragma once

#include "manicheck/core/model.hpp"
#include "manicheck/core/report.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace manicheck::eval {

// NFC, Unicode lower case, whitespace collapsed, and digit-grouping commas or
// thin spaces between digits removed ("1,500" -> "1500").
std::string normalize_for_match(std::string_view s);

// True iff both sides of the manipulation appear in `raw` after
// normalize_for_match. A number only matches as a whole number, so "150" is
// not found inside "1500".
bool validate_explanation(std::string_view raw, const ManipulationSpan& span);

struct ScoringOptions {
    // Read only the runs that voted with the majority when validating
    // explanations; all runs otherwise.
    bool majority_runs_only = false;
};

struct ClaimScore {
    bool accepted = false;
    bool predicted_positive = false;  // predicted fake
    std::optional<bool> explanation_valid;
};

// Positive class is fake. NonConclusive counts as the wrong label. A
// context-altered claim detected as False is only accepted when the
// explanation names both the original and the replacement; otherwise it is a
// miss.
ClaimScore score(Veracity ground_truth, const std::optional<ClaimKind>& kind,
                 const std::optional<ManipulationSpan>& manipulation, const Prediction& prediction,
                 const ScoringOptions& options = {});

ClaimScore score_claim(const ClaimRecord& claim, const Prediction& prediction,
                       const ScoringOptions& options = {});

void tally(ConfusionMatrix& cm, Veracity ground_truth, bool predicted_positive) noexcept;

// Undefined ratios are empty. f1 is 2pr/(p+r) when both are defined, 0 when
// p + r = 0, and also 0 when one side is undefined but errors exist.
Metrics compute_metrics(const ConfusionMatrix& cm);

// Linear interpolation between order statistics (the usual "type 7"
// definition). Zeros for an empty sample.
Quantiles quantiles(std::vector<double> samples);

// Confusion matrix, metrics, per-kind accuracy, non-conclusive rates and
// timing of `report.per_claim`, which is also sorted by id.
void finalize_report(EvalReport& report);

}  // namespace manicheck::eval
