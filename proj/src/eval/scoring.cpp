#include "manicheck/eval/scoring.hpp"

#include "manicheck/core/text.hpp"

#include <algorithm>
#include <cmath>

namespace manicheck::eval {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Length of a grouping separator starting at `s[i]`, or 0.
std::size_t grouping_separator(std::string_view s, std::size_t i) {
    if (s[i] == ',') return 1;
    if (s.compare(i, 3, "\xE2\x80\xAF") == 0 || s.compare(i, 3, "\xE2\x80\x89") == 0) return 3;  // U+202F, U+2009
    return 0;
}

}  // namespace

std::string normalize_for_match(std::string_view s) {
    std::string folded = text::collapse_whitespace(text::unicode_lower(text::nfc(s)));
    std::string out;
    out.reserve(folded.size());
    for (std::size_t i = 0; i < folded.size(); ++i) {
        std::size_t sep = grouping_separator(folded, i);
        if (sep && !out.empty() && is_digit(out.back()) && i + sep < folded.size() && is_digit(folded[i + sep])) {
            i += sep - 1;
            continue;
        }
        out.push_back(folded[i]);
    }
    return out;
}

bool validate_explanation(std::string_view raw, const ManipulationSpan& span) {
    std::string hay = normalize_for_match(raw);
    std::string original = normalize_for_match(span.original);
    std::string replacement = normalize_for_match(span.replacement);
    if (original.empty() || replacement.empty()) return false;
    return text::contains_fragment(hay, original) && text::contains_fragment(hay, replacement);
}

ClaimScore score(Veracity ground_truth, const std::optional<ClaimKind>& kind,
                 const std::optional<ManipulationSpan>& manipulation, const Prediction& prediction,
                 const ScoringOptions& options) {
    ClaimScore s;
    bool fake = ground_truth == Veracity::False;
    switch (prediction.majority) {
        case VerdictLabel::True: s.predicted_positive = false; break;
        case VerdictLabel::False: s.predicted_positive = true; break;
        case VerdictLabel::NonConclusive: s.predicted_positive = !fake; break;
    }
    if (fake && kind == ClaimKind::ContextAltered && prediction.majority == VerdictLabel::False) {
        std::string raw;
        for (const auto& run : prediction.runs) {
            if (options.majority_runs_only && run.label != prediction.majority) continue;
            raw += run.raw;
            raw += "\n";
        }
        s.explanation_valid = manipulation && validate_explanation(raw, *manipulation);
        if (!*s.explanation_valid) s.predicted_positive = false;
    }
    s.accepted = s.predicted_positive == fake;
    return s;
}

ClaimScore score_claim(const ClaimRecord& claim, const Prediction& prediction, const ScoringOptions& options) {
    return score(claim.label, claim.kind, claim.manipulation, prediction, options);
}

void tally(ConfusionMatrix& cm, Veracity ground_truth, bool predicted_positive) noexcept {
    bool fake = ground_truth == Veracity::False;
    if (fake) {
        ++(predicted_positive ? cm.tp : cm.fn);
    } else {
        ++(predicted_positive ? cm.fp : cm.tn);
    }
}

Metrics compute_metrics(const ConfusionMatrix& cm) {
    Metrics m;
    auto ratio = [](std::size_t num, std::size_t den) -> std::optional<double> {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    };
    m.precision = ratio(cm.tp, cm.tp + cm.fp);
    m.recall = ratio(cm.tp, cm.tp + cm.fn);
    m.accuracy = ratio(cm.tp + cm.tn, cm.total());
    if (m.precision && m.recall) {
        double sum = *m.precision + *m.recall;
        m.f1 = sum > 0.0 ? 2.0 * *m.precision * *m.recall / sum : 0.0;
    } else if (cm.fp + cm.fn > 0) {
        m.f1 = 0.0;
    }
    return m;
}

Quantiles quantiles(std::vector<double> samples) {
    Quantiles q;
    if (samples.empty()) return q;
    std::sort(samples.begin(), samples.end());
    auto at = [&](double p) {
        double h = (static_cast<double>(samples.size()) - 1.0) * p;
        auto lo = static_cast<std::size_t>(std::floor(h));
        std::size_t hi = std::min(lo + 1, samples.size() - 1);
        return samples[lo] + (h - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
    };
    q.p25 = at(0.25);
    q.median = at(0.5);
    q.p75 = at(0.75);
    return q;
}

void finalize_report(EvalReport& report) {
    std::stable_sort(report.per_claim.begin(), report.per_claim.end(),
                     [](const ClaimOutcome& a, const ClaimOutcome& b) { return a.id < b.id; });
    report.confusion = {};
    report.per_kind_accuracy.clear();
    std::map<ClaimKind, std::pair<std::size_t, std::size_t>> per_kind;  // accepted, total
    std::size_t runs = 0, nc_runs = 0, nc_majority = 0;
    std::vector<double> build, infer;
    for (const auto& c : report.per_claim) {
        tally(report.confusion, c.ground_truth, c.predicted_positive);
        if (c.kind) {
            auto& [acc, total] = per_kind[*c.kind];
            acc += c.accepted ? 1 : 0;
            ++total;
        }
        runs += c.run_labels.size();
        nc_runs += static_cast<std::size_t>(
            std::count(c.run_labels.begin(), c.run_labels.end(), VerdictLabel::NonConclusive));
        if (c.majority == VerdictLabel::NonConclusive) ++nc_majority;
        if (!c.error) {
            build.push_back(c.elapsed.context_build_seconds);
            infer.push_back(c.elapsed.inference_seconds);
        }
    }
    for (const auto& [kind, counts] : per_kind) {
        report.per_kind_accuracy[kind] = static_cast<double>(counts.first) / static_cast<double>(counts.second);
    }
    report.metrics = compute_metrics(report.confusion);
    report.non_conclusive_rate_runs = runs ? static_cast<double>(nc_runs) / static_cast<double>(runs) : 0.0;
    report.non_conclusive_rate_majority =
        report.per_claim.empty() ? 0.0
                                 : static_cast<double>(nc_majority) / static_cast<double>(report.per_claim.size());
    report.timing.samples = build.size();
    report.timing.context_build = quantiles(std::move(build));
    report.timing.inference = quantiles(std::move(infer));
}

}  // namespace manicheck::eval
