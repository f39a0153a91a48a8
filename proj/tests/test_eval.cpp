#include "doctest.h"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/json_io.hpp"
#include "manicheck/eval/benchmark.hpp"
#include "manicheck/eval/protocols.hpp"
#include "manicheck/eval/scoring.hpp"
#include "support/fixtures.hpp"

#include <algorithm>
#include <random>
#include <sstream>

using namespace manicheck;
using namespace manicheck::eval;

namespace {

Prediction prediction(std::vector<std::pair<VerdictLabel, std::string>> runs) {
    Prediction p;
    std::vector<VerdictLabel> labels;
    for (auto& [label, raw] : runs) {
        p.runs.push_back(Verdict{label, raw, raw});
        labels.push_back(label);
    }
    p.majority = majority_label(labels);
    return p;
}

const ManipulationSpan kSpan{"150", "1500"};

}  // namespace

TEST_CASE("validate_explanation") {
    CHECK(validate_explanation("Reports say 150 died, not 1500. False", kSpan));
    CHECK_FALSE(validate_explanation("The figure 1500 is wrong. False", kSpan));
    CHECK(validate_explanation("Only 150 were killed; 1,500 is inflated. False", kSpan));
    CHECK(validate_explanation("1\xE2\x80\xAF" "500 versus 150", kSpan));
    CHECK(validate_explanation("mexico won nothing; it was UKRAINE. False", ManipulationSpan{"Ukraine", "Mexico"}));
    CHECK(validate_explanation("The ceasefire was in\n   Israel, not Lebanon",
                               ManipulationSpan{"Israel", "Lebanon"}));
    CHECK(normalize_for_match("  A\t 1,500  ") == "a 1500");
}

TEST_CASE("score rules") {
    auto truth_nc = score(Veracity::True, ClaimKind::Original, std::nullopt,
                          prediction({{VerdictLabel::NonConclusive, "?"}, {VerdictLabel::NonConclusive, "?"},
                                      {VerdictLabel::True, "x True"}}));
    CHECK_FALSE(truth_nc.accepted);
    CHECK(truth_nc.predicted_positive);

    auto fake_nc = score(Veracity::False, ClaimKind::Negation, std::nullopt,
                         prediction({{VerdictLabel::NonConclusive, "?"}, {VerdictLabel::NonConclusive, "?"},
                                     {VerdictLabel::False, "x False"}}));
    CHECK_FALSE(fake_nc.accepted);
    CHECK_FALSE(fake_nc.predicted_positive);

    auto named = score(Veracity::False, ClaimKind::ContextAltered, kSpan,
                       prediction({{VerdictLabel::False, "150 not 1500. False"}, {VerdictLabel::False, "No. False"},
                                   {VerdictLabel::True, "ok True"}}));
    CHECK(named.accepted);
    CHECK(named.predicted_positive);
    CHECK(named.explanation_valid == std::optional<bool>(true));

    auto unnamed = score(Veracity::False, ClaimKind::ContextAltered, kSpan,
                         prediction({{VerdictLabel::False, "Wrong. False"}, {VerdictLabel::False, "No. False"},
                                     {VerdictLabel::True, "ok True"}}));
    CHECK_FALSE(unnamed.accepted);
    CHECK_FALSE(unnamed.predicted_positive);
    CHECK(unnamed.explanation_valid == std::optional<bool>(false));

    // The spans appear only in the losing run.
    auto minority = prediction({{VerdictLabel::False, "Wrong. False"}, {VerdictLabel::False, "No. False"},
                                {VerdictLabel::True, "150 and 1500 True"}});
    CHECK(score(Veracity::False, ClaimKind::ContextAltered, kSpan, minority).accepted);
    ScoringOptions majority_only;
    majority_only.majority_runs_only = true;
    CHECK_FALSE(score(Veracity::False, ClaimKind::ContextAltered, kSpan, minority, majority_only).accepted);

    auto benchmark_row = score(Veracity::False, std::nullopt, std::nullopt,
                               prediction({{VerdictLabel::False, "F False"}, {VerdictLabel::False, "F False"},
                                           {VerdictLabel::False, "F False"}}));
    CHECK(benchmark_row.accepted);
    CHECK_FALSE(benchmark_row.explanation_valid);
}

TEST_CASE("compute_metrics") {
    Metrics published = compute_metrics(ConfusionMatrix{3956, 1017, 314, 1483});
    CHECK(*published.precision == doctest::Approx(0.7955).epsilon(0.0005 / 0.7955));
    CHECK(*published.recall == doctest::Approx(0.9265).epsilon(0.0005 / 0.9265));
    CHECK(*published.f1 == doctest::Approx(0.8560).epsilon(0.0005 / 0.8560));
    CHECK(*published.accuracy == doctest::Approx(0.8034).epsilon(0.0005 / 0.8034));

    Metrics perfect = compute_metrics(ConfusionMatrix{10, 0, 0, 10});
    CHECK(*perfect.precision == 1.0);
    CHECK(*perfect.recall == 1.0);
    CHECK(*perfect.f1 == 1.0);
    CHECK(*perfect.accuracy == 1.0);

    Metrics degenerate = compute_metrics(ConfusionMatrix{0, 0, 5, 5});
    CHECK_FALSE(degenerate.precision);
    CHECK(*degenerate.recall == 0.0);
    CHECK(*degenerate.f1 == 0.0);
    CHECK(*degenerate.accuracy == 0.5);

    Metrics empty = compute_metrics(ConfusionMatrix{});
    CHECK_FALSE(empty.precision);
    CHECK_FALSE(empty.recall);
    CHECK_FALSE(empty.accuracy);
}

TEST_CASE("quantiles interpolate linearly") {
    Quantiles q = quantiles({4.0, 1.0, 3.0, 2.0});
    CHECK(q.p25 == doctest::Approx(1.75));
    CHECK(q.median == doctest::Approx(2.5));
    CHECK(q.p75 == doctest::Approx(3.25));
    Quantiles one = quantiles({7.0});
    CHECK(one.p25 == 7.0);
    CHECK(one.p75 == 7.0);
    CHECK(quantiles({}).median == 0.0);
}

TEST_CASE("benchmark label collapse") {
    using S = BenchmarkScheme;
    CHECK(collapse_label("pants-fire", S::SixWayCollapse) == std::optional<Veracity>(Veracity::False));
    CHECK(collapse_label("Pants on Fire", S::SixWayCollapse) == std::optional<Veracity>(Veracity::False));
    CHECK(collapse_label("mostly-true", S::SixWayCollapse) == std::optional<Veracity>(Veracity::True));
    CHECK_FALSE(collapse_label("half-true", S::SixWayCollapse));
    CHECK_FALSE(collapse_label("barely-true", S::SixWayCollapse));
    CHECK_FALSE(collapse_label("half-true", S::ThreeWayCollapse));
    CHECK(collapse_label("TRUE", S::Binary) == std::optional<Veracity>(Veracity::True));
    CHECK_THROWS_AS(collapse_label("mostly-true", S::ThreeWayCollapse), FormatError);
    CHECK_THROWS_AS(collapse_label("satire", S::SixWayCollapse), FormatError);
    CHECK(parse_benchmark_scheme("sixway") == S::SixWayCollapse);
}

TEST_CASE("load_benchmark") {
    BenchmarkAdapterConfig cfg;
    cfg.scheme = BenchmarkScheme::SixWayCollapse;
    auto items = load_benchmark(testsupport::fixture("benchmark_sixway.jsonl"), cfg);
    REQUIRE(items.size() == 4);
    std::vector<Veracity> truth;
    for (const auto& i : items) {
        truth.push_back(i.ground_truth);
        CHECK_FALSE(i.evidence);
    }
    CHECK(truth == std::vector<Veracity>{Veracity::True, Veracity::True, Veracity::False, Veracity::False});

    cfg.evidence_mode = true;
    for (const auto& i : load_benchmark(testsupport::fixture("benchmark_sixway.jsonl"), cfg)) {
        REQUIRE(i.evidence);
        CHECK_FALSE(i.evidence->empty());
    }

    std::stringstream bad("{\"claim\":\"a\",\"label\":\"true\"}\n{\"claim\":\"b\",\"label\":\"weird\"}\n");
    try {
        load_benchmark(bad, BenchmarkAdapterConfig{});
        FAIL("expected a format error");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::stringstream ids("{\"claim\":\"a\",\"label\":\"true\"}\n");
    CHECK(load_benchmark(ids, BenchmarkAdapterConfig{})[0].id == "row-000001");
}

TEST_CASE("scored fixture in ablation mode") {
    auto dataset = read_claims_jsonl(testsupport::fixture("scored_dataset.jsonl"));
    auto detector = testsupport::fixture_detector("scored_llm.json");
    EvalReport report = run_ablation(dataset, detector);
    CHECK(report.mode == "ablation");
    CHECK(report.confusion == ConfusionMatrix{1, 0, 1, 2});
    CHECK(*report.metrics.accuracy == doctest::Approx(0.75));
    CHECK(detector.counts().search == 0);
    CHECK(detector.counts().embed == 0);
    CHECK(detector.counts().llm == 12);
    CHECK(report.per_kind_accuracy.at(ClaimKind::Original) == 1.0);
    CHECK(report.per_kind_accuracy.at(ClaimKind::Negation) == 1.0);
    CHECK(report.per_kind_accuracy.at(ClaimKind::ContextAltered) == 0.0);
    CHECK(report.non_conclusive_rate_runs == doctest::Approx(2.0 / 12.0));
    CHECK(report.non_conclusive_rate_majority == 0.0);
    for (std::size_t i = 1; i < report.per_claim.size(); ++i) {
        CHECK(report.per_claim[i - 1].id < report.per_claim[i].id);
    }
}

TEST_CASE("golden fixture in retrieval mode is all correct") {
    auto dataset = read_claims_jsonl(testsupport::fixture("golden_dataset.jsonl"));
    auto detector = testsupport::fixture_detector("golden_llm.json");
    EvalReport report = evaluate_dataset(dataset, detector);
    CHECK(report.mode == "retrieval");
    CHECK(report.confusion == ConfusionMatrix{2, 0, 0, 2});
    for (const auto& [kind, acc] : report.per_kind_accuracy) CHECK(acc == 1.0);
    CHECK(*report.metrics.f1 == 1.0);
}

TEST_CASE("evaluation is deterministic and order independent") {
    auto dataset = read_claims_jsonl(testsupport::fixture("scored_dataset.jsonl"));
    auto a = testsupport::fixture_detector("scored_llm.json");
    auto first = dump_json(to_json(run_ablation(dataset, a), false));
    std::mt19937 rng(5);
    for (int i = 0; i < 5; ++i) {
        std::shuffle(dataset.begin(), dataset.end(), rng);
        auto b = testsupport::fixture_detector("scored_llm.json");
        EvalOptions opts;
        opts.parallel = 1 + i;
        CHECK(dump_json(to_json(run_ablation(dataset, b, opts), false)) == first);
    }
}

TEST_CASE("per-claim failures become non-conclusive outcomes") {
    auto dataset = read_claims_jsonl(testsupport::fixture("scored_dataset.jsonl"));
    // The golden transcript has no ablation prompts, so every claim fails.
    auto detector = testsupport::fixture_detector("golden_llm.json");
    EvalReport report = run_ablation(dataset, detector);
    REQUIRE(report.per_claim.size() == 4);
    for (const auto& c : report.per_claim) {
        CHECK(c.error);
        CHECK(c.majority == VerdictLabel::NonConclusive);
        CHECK_FALSE(c.accepted);
    }
    CHECK(report.confusion == ConfusionMatrix{0, 2, 2, 0});
    CHECK(report.timing.samples == 0);
}

TEST_CASE("empty dataset") {
    auto detector = testsupport::fixture_detector("scored_llm.json");
    EvalReport report = evaluate_dataset({}, detector);
    CHECK(report.per_claim.empty());
    CHECK(report.confusion == ConfusionMatrix{});
    CHECK(run_ablation({}, detector).mode == "ablation");
}

TEST_CASE("six-way benchmark in evidence mode") {
    BenchmarkAdapterConfig cfg;
    cfg.scheme = BenchmarkScheme::SixWayCollapse;
    cfg.evidence_mode = true;
    auto items = load_benchmark(testsupport::fixture("benchmark_sixway.jsonl"), cfg);
    auto detector = testsupport::fixture_detector("benchmark_llm.json");
    EvalReport report = run_benchmark(items, detector, true);
    CHECK(report.mode == "evidence");
    CHECK(report.per_claim.size() == 4);
    CHECK(detector.counts().search == 0);
    CHECK(detector.counts().fetch == 0);
    CHECK(detector.counts().llm == 12);
    CHECK(*report.metrics.f1 == 1.0);
}

TEST_CASE("report JSON round-trip") {
    auto dataset = read_claims_jsonl(testsupport::fixture("scored_dataset.jsonl"));
    auto detector = testsupport::fixture_detector("scored_llm.json");
    EvalReport report = run_ablation(dataset, detector);
    Json j = to_json(report, false);
    CHECK(dump_json(to_json(eval_report_from_json(j), false)) == dump_json(j));
}
