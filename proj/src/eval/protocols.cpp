#include "manicheck/eval/protocols.hpp"

#include "manicheck/core/errors.hpp"

#include <atomic>
#include <thread>

namespace manicheck::eval {

EvalItem to_eval_item(const ClaimRecord& r) {
    EvalItem item;
    item.id = r.id;
    item.claim = r.headline;
    item.ground_truth = r.label;
    item.kind = r.kind;
    item.manipulation = r.manipulation;
    if (!r.region.empty()) item.region = r.region;
    item.date = r.published_date;
    return item;
}

EvalItem to_eval_item(const BenchmarkItem& b) {
    EvalItem item;
    item.id = b.id;
    item.claim = b.claim;
    item.ground_truth = b.ground_truth;
    item.evidence = b.evidence;
    return item;
}

EvalReport evaluate_items(const std::vector<EvalItem>& items, pipeline::Detector& detector,
                          std::optional<pipeline::Mode> mode, const std::string& report_mode,
                          const EvalOptions& options) {
    if (options.parallel == 0) throw ConfigError("parallel must be positive");
    EvalReport report;
    report.mode = report_mode;
    report.config_digest = detector.config().digest;
    report.per_claim.resize(items.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < items.size(); i = next++) {
            const EvalItem& item = items[i];
            ClaimOutcome& out = report.per_claim[i];
            out.id = item.id;
            out.ground_truth = item.ground_truth;
            out.kind = item.kind;
            pipeline::DetectRequest req;
            req.claim = item.claim;
            req.mode = mode;
            req.region = item.region;
            req.date = item.date;
            req.claim_id = item.id;
            req.evidence = item.evidence;
            Prediction p;
            try {
                p = detector.detect(req);
            } catch (const std::exception& e) {
                p = Prediction{};
                p.majority = VerdictLabel::NonConclusive;
                out.error = e.what();
            }
            ClaimScore s = score(item.ground_truth, item.kind, item.manipulation, p, options.scoring);
            out.majority = p.majority;
            out.accepted = s.accepted;
            out.predicted_positive = s.predicted_positive;
            out.explanation_valid = s.explanation_valid;
            for (const auto& run : p.runs) out.run_labels.push_back(run.label);
            out.warnings = p.warnings;
            out.elapsed = p.elapsed;
        }
    };
    std::size_t threads = std::min(options.parallel, items.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    finalize_report(report);
    return report;
}

EvalReport evaluate_dataset(const std::vector<ClaimRecord>& dataset, pipeline::Detector& detector,
                            const EvalOptions& options) {
    std::vector<EvalItem> items;
    for (const auto& r : dataset) items.push_back(to_eval_item(r));
    return evaluate_items(items, detector, std::nullopt, std::string(pipeline::to_string(detector.config().mode)),
                          options);
}

EvalReport run_ablation(const std::vector<ClaimRecord>& dataset, pipeline::Detector& detector,
                        const EvalOptions& options) {
    std::vector<EvalItem> items;
    for (const auto& r : dataset) items.push_back(to_eval_item(r));
    return evaluate_items(items, detector, pipeline::Mode::Ablation, "ablation", options);
}

EvalReport run_benchmark(const std::vector<BenchmarkItem>& rows, pipeline::Detector& detector,
                         bool evidence_mode, const EvalOptions& options) {
    std::vector<EvalItem> items;
    for (const auto& r : rows) {
        EvalItem item = to_eval_item(r);
        if (evidence_mode && !item.evidence) item.evidence = std::vector<std::string>{};
        if (!evidence_mode) item.evidence.reset();
        items.push_back(std::move(item));
    }
    std::string mode = evidence_mode ? "evidence" : std::string(pipeline::to_string(detector.config().mode));
    return evaluate_items(items, detector, std::nullopt, mode, options);
}

}  // namespace manicheck::eval
