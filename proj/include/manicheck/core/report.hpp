#pragma once

#include "manicheck/core/model.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace manicheck {

// Positive class is "fake" (ground truth False).
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const noexcept { return tp + fp + fn + tn; }
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Undefined ratios (zero denominators) are empty.
struct Metrics {
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    std::optional<double> accuracy;
};

struct ClaimOutcome {
    std::string id;
    Veracity ground_truth = Veracity::True;
    std::optional<ClaimKind> kind;  // absent for external benchmark rows
    VerdictLabel majority = VerdictLabel::NonConclusive;
    bool accepted = false;
    bool predicted_positive = false;
    std::optional<bool> explanation_valid;
    std::vector<VerdictLabel> run_labels;
    std::optional<std::string> error;
    std::vector<std::string> warnings;
    StageTiming elapsed;
};

struct Quantiles {
    double p25 = 0.0;
    double median = 0.0;
    double p75 = 0.0;
};

struct TimingSummary {
    Quantiles context_build;
    Quantiles inference;
    std::size_t samples = 0;
};

struct EvalReport {
    std::string mode;  // "retrieval", "ablation" or "evidence"
    std::string config_digest;
    std::vector<ClaimOutcome> per_claim;  // sorted by claim id
    ConfusionMatrix confusion;
    Metrics metrics;
    std::map<ClaimKind, double> per_kind_accuracy;  // only kinds present
    double non_conclusive_rate_runs = 0.0;
    double non_conclusive_rate_majority = 0.0;
    TimingSummary timing;
};

}  // namespace manicheck
