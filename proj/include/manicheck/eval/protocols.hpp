#pragma once

#include "manicheck/core/model.hpp"
#include "manicheck/core/report.hpp"
#include "manicheck/eval/benchmark.hpp"
#include "manicheck/eval/scoring.hpp"
#include "manicheck/pipeline/detector.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace manicheck::eval {

struct EvalOptions {
    std::size_t parallel = 4;  // claims in flight
    ScoringOptions scoring;
};

// One claim to score. Dataset records and benchmark rows both map onto it.
struct EvalItem {
    std::string id;
    std::string claim;
    Veracity ground_truth = Veracity::True;
    std::optional<ClaimKind> kind;
    std::optional<ManipulationSpan> manipulation;
    std::optional<std::string> region;
    std::optional<CalendarDate> date;
    std::optional<std::vector<std::string>> evidence;
};

EvalItem to_eval_item(const ClaimRecord& record);
EvalItem to_eval_item(const BenchmarkItem& item);

// Detects and scores every item, `parallel` at a time. A claim whose
// pipeline throws is recorded as a NonConclusive outcome carrying the error;
// the batch goes on. per_claim is sorted by id.
EvalReport evaluate_items(const std::vector<EvalItem>& items, pipeline::Detector& detector,
                          std::optional<pipeline::Mode> mode, const std::string& report_mode,
                          const EvalOptions& options = {});

// The detector's configured mode.
EvalReport evaluate_dataset(const std::vector<ClaimRecord>& dataset, pipeline::Detector& detector,
                            const EvalOptions& options = {});

// Same protocol without retrieval; tagged mode "ablation".
EvalReport run_ablation(const std::vector<ClaimRecord>& dataset, pipeline::Detector& detector,
                        const EvalOptions& options = {});

// Evidence mode replaces search and crawl with each row's evidence texts;
// otherwise rows go through the detector's configured mode.
EvalReport run_benchmark(const std::vector<BenchmarkItem>& items, pipeline::Detector& detector,
                         bool evidence_mode, const EvalOptions& options = {});

}  // namespace manicheck::eval
