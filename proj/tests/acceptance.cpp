// Acceptance checks. Prints one line per criterion and exits non-zero if any
// criterion fails. Criterion 9 needs live providers and is skipped unless
// MANICHECK_LIVE_SMOKE=1; it reads MANICHECK_LIVE_HEADLINES (a file of
// headlines) and optionally MANICHECK_LIVE_CONFIG.

#include "manicheck/context/embedding.hpp"
#include "manicheck/context/splitter.hpp"
#include "manicheck/context/vector_index.hpp"
#include "manicheck/core/errors.hpp"
#include "manicheck/core/json_io.hpp"
#include "manicheck/core/log.hpp"
#include "manicheck/core/text.hpp"
#include "manicheck/core/validate.hpp"
#include "manicheck/dataset/assembly.hpp"
#include "manicheck/dataset/feed.hpp"
#include "manicheck/dataset/generation.hpp"
#include "manicheck/eval/benchmark.hpp"
#include "manicheck/eval/protocols.hpp"
#include "manicheck/eval/scoring.hpp"
#include "manicheck/inference/llm.hpp"
#include "manicheck/inference/runner.hpp"
#include "manicheck/inference/verdict.hpp"
#include "manicheck/pipeline/detector.hpp"
#include "manicheck/retrieval/fetch.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace manicheck;

namespace {

struct Outcome {
    enum class Status { Pass, Fail, Skip } status = Status::Pass;
    std::string detail;
};

// Collects failed expectations for one criterion.
class Checks {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        if (!ok) ++count_;
    }
    bool ok() const { return count_ == 0; }
    std::string summary() const {
        std::string s;
        for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
        if (count_ > failures_.size()) s += "; +" + std::to_string(count_ - failures_.size()) + " more";
        return s;
    }

private:
    std::vector<std::string> failures_;
    std::size_t count_ = 0;
};

using Clock = std::chrono::steady_clock;

Outcome finish(const Checks& c, Clock::time_point start, double limit_seconds, const std::string& what) {
    double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    std::ostringstream detail;
    detail.precision(3);
    detail << what << " in " << std::fixed << elapsed * 1000 << " ms";
    if (limit_seconds > 0) detail << " (limit " << limit_seconds * 1000 << " ms)";
    if (!c.ok()) return {Outcome::Status::Fail, detail.str() + ": " + c.summary()};
    if (limit_seconds > 0 && elapsed >= limit_seconds) return {Outcome::Status::Fail, detail.str() + ": too slow"};
    return {Outcome::Status::Pass, detail.str()};
}

bool near(const std::optional<double>& v, double expected, double tol) {
    return v && std::fabs(*v - expected) <= tol;
}

Outcome metrics_reproduction() {
    Checks c;
    auto start = Clock::now();
    Metrics m = eval::compute_metrics(ConfusionMatrix{3956, 1017, 314, 1483});
    auto out = finish(c, start, 0.001, "precision/recall/f1/accuracy");
    c.expect(near(m.precision, 0.7955, 0.0005), "precision");
    c.expect(near(m.recall, 0.9265, 0.0005), "recall");
    c.expect(near(m.f1, 0.8560, 0.0005), "f1");
    c.expect(near(m.accuracy, 0.8034, 0.0005), "accuracy");
    if (!c.ok()) return {Outcome::Status::Fail, out.detail + ": " + c.summary()};
    return out;
}

Outcome chunker_conformance() {
    Checks c;
    auto start = Clock::now();
    context::SplitterConfig cfg;
    std::mt19937 rng(20240721);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t length = trial == 0 ? 0 : trial == 1 ? 2000 : rng() % 2001;
        std::string text = testsupport::random_text(rng, length);
        auto violation = testsupport::chunk_invariant_violation(text, context::split_recursive(text, cfg), cfg);
        c.expect(!violation, "text " + std::to_string(trial) + ": " + violation.value_or(""));
    }
    std::string raw;
    for (int i = 0; i < 240; ++i) raw += static_cast<char>('a' + i % 26);
    auto chunks = context::split_recursive(raw, cfg);
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (const auto& ch : chunks) spans.emplace_back(ch.char_start, ch.char_start + ch.text.size());
    c.expect(spans == std::vector<std::pair<std::size_t, std::size_t>>{{0, 100}, {80, 180}, {160, 240}},
             "240-char case offsets");
    return finish(c, start, 1.0, "200 random texts and the 240-char case");
}

Outcome retrieval_oracle() {
    Checks c;
    auto start = Clock::now();
    std::mt19937 rng(1000);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t size = trial == 0 ? 1000 : 1 + rng() % 1000;
        std::vector<std::vector<double>> rows;
        context::VectorIndex index;
        for (std::size_t i = 0; i < size; ++i) {
            std::vector<double> v(16);
            if (i > 0 && rng() % 8 == 0) {
                v = rows[rng() % rows.size()];
            } else {
                for (auto& x : v) x = gauss(rng);
            }
            rows.push_back(v);
            EmbeddedChunk e;
            e.chunk.seq = i;
            e.vector = v;
            index.add(e);
        }
        std::vector<double> q(16);
        for (auto& x : q) x = gauss(rng);
        if (trial % 5 == 0) q = rows[rng() % rows.size()];
        auto expected = testsupport::brute_force_top_n(rows, q, 5);
        auto got = context::retrieve_top_n(index, q, 5);
        std::vector<std::size_t> got_ids;
        for (const auto& e : got) got_ids.push_back(e.chunk.seq);
        c.expect(got_ids == expected, "trial " + std::to_string(trial));
    }
    return finish(c, start, 5.0, "200 trials, dim 16, up to 1000 entries, n=5");
}

Outcome verdict_and_voting() {
    Checks c;
    auto start = Clock::now();
    struct Row {
        std::string raw;
        VerdictLabel label;
        std::string explanation;
    };
    const std::vector<Row> table{
        {"The reports agree with the statement. True", VerdictLabel::True, "The reports agree with the statement."},
        {"I don't know whether this is accurate.", VerdictLabel::NonConclusive, "I don't know whether this is accurate."},
        {"The claim is fabricated. **False.**", VerdictLabel::False, "The claim is fabricated."},
    };
    for (const auto& row : table) {
        Verdict v = inference::parse_verdict(row.raw);
        c.expect(v.label == row.label && v.explanation == row.explanation, "table: " + row.raw);
    }
    std::mt19937 rng(50);
    for (int i = 0; i < 50; ++i) {
        bool truth = rng() % 2;
        std::string word = truth ? (rng() % 2 ? "True" : "true") : (rng() % 2 ? "False" : "FALSE");
        std::string raw = "Reasoning. " + testsupport::decorate_decision(rng, word);
        Verdict v = inference::parse_verdict(raw);
        c.expect(v.label == (truth ? VerdictLabel::True : VerdictLabel::False) && v.explanation == "Reasoning.",
                 "fuzz: " + raw);
    }

    auto tpl = inference::PromptTemplate::default_template();
    auto prompt = inference::build_prompt("claim", "context", tpl);
    auto vote = [&](std::vector<std::string> responses) {
        inference::ScriptedLlmProvider llm;
        llm.add_for_prompt(prompt.system_text, prompt.user_text, std::move(responses));
        Prediction p = inference::run_majority("claim", "context", tpl, llm);
        c.expect(llm.calls() == 3, "three provider calls");
        return p.majority;
    };
    c.expect(vote({"a True", "b True", "c False"}) == VerdictLabel::True, "T,T,F");
    c.expect(vote({"a True", "b False", "unsure"}) == VerdictLabel::NonConclusive, "T,F,NC");
    c.expect(vote({"unsure", "no idea", "c True"}) == VerdictLabel::NonConclusive, "NC,NC,T");

    const std::array<std::pair<VerdictLabel, std::string>, 3> labels{
        {{VerdictLabel::True, "x True"}, {VerdictLabel::False, "x False"}, {VerdictLabel::NonConclusive, "x maybe"}}};
    std::map<std::multiset<VerdictLabel>, VerdictLabel> by_multiset;
    for (const auto& a : labels) {
        for (const auto& b : labels) {
            for (const auto& d : labels) {
                VerdictLabel m = vote({a.second, b.second, d.second});
                c.expect(m == testsupport::expected_majority(a.first, b.first, d.first), "triple oracle");
                auto [it, fresh] = by_multiset.emplace(std::multiset<VerdictLabel>{a.first, b.first, d.first}, m);
                c.expect(fresh || it->second == m, "permutation invariance");
            }
        }
    }
    c.expect(by_multiset.size() == 10, "27 triples cover 10 multisets");
    return finish(c, start, 1.0, "example table, 50 fuzzed suffixes, 3 vote outcomes, 27 triples");
}

Outcome end_to_end_determinism() {
    Checks c;
    net::NoNetworkGuard guard;
    std::size_t attempts_before = net::live_connection_attempts();
    const std::string claim = "At least 1500 people have been killed in Bangladesh protests";
    std::string golden = text::trim(read_file(testsupport::fixture("golden_prediction.json")));

    // Chunks the detector will index, counted independently for the batch rule.
    std::size_t chunk_total = 0;
    {
        auto search = retrieval::MockSearchProvider::from_file(testsupport::fixture("search.json"));
        auto http = net::FixtureHttpClient::from_manifest(testsupport::fixture("pages.json"));
        auto docs = retrieval::collect_top_k(retrieval::build_search_query(claim), 3, *search,
                                             retrieval::FetchPolicy{}, *http);
        for (std::size_t i = 0; i < docs.size(); ++i) {
            chunk_total += context::split_recursive(docs[i].text, context::SplitterConfig{}, i).size();
        }
    }
    std::size_t expected_batches = (chunk_total + 63) / 64 + 1;

    auto start = Clock::now();
    std::string first;
    for (int run = 0; run < 3; ++run) {
        auto detector = testsupport::fixture_detector("golden_llm.json");
        Prediction p = detector.detect(claim);
        std::string bytes = dump_json(to_json(p, false));
        if (run == 0) first = bytes;
        c.expect(bytes == first, "run " + std::to_string(run + 1) + " differs");
        c.expect(bytes == golden, "run " + std::to_string(run + 1) + " differs from the pinned golden bytes");
        auto counts = detector.counts();
        c.expect(counts.search == 1, "search calls " + std::to_string(counts.search));
        c.expect(counts.fetch <= 9, "fetches " + std::to_string(counts.fetch));
        c.expect(counts.embed == expected_batches,
                 "embed batches " + std::to_string(counts.embed) + " expected " + std::to_string(expected_batches));
        c.expect(counts.llm == 3, "llm calls " + std::to_string(counts.llm));
        c.expect(p.majority == VerdictLabel::False, "majority");
        c.expect(p.context_digest.size() == 3, "context digest size");
    }
    c.expect(net::live_connection_attempts() == attempts_before, "live connection attempted");
    return finish(c, start, 2.0, "3 detect runs byte-identical, counts (1, <=9, " + std::to_string(expected_batches) +
                                     ", 3), no network");
}

Outcome scoring_rules() {
    Checks c;
    auto start = Clock::now();
    auto dataset = read_claims_jsonl(testsupport::fixture("scored_dataset.jsonl"));
    auto detector = testsupport::fixture_detector("scored_llm.json");
    EvalReport report = eval::run_ablation(dataset, detector);
    c.expect(report.confusion == ConfusionMatrix{1, 0, 1, 2}, "fixture matrix");

    auto make = [](std::vector<std::pair<VerdictLabel, std::string>> runs) {
        Prediction p;
        std::vector<VerdictLabel> labels;
        for (auto& [l, raw] : runs) {
            p.runs.push_back(Verdict{l, raw, raw});
            labels.push_back(l);
        }
        p.majority = majority_label(labels);
        return p;
    };
    const ManipulationSpan span{"150", "1500"};
    for (const std::string& text : {"The toll of 1500 is wrong. False", "Only 150 died. False"}) {
        auto s = eval::score(Veracity::False, ClaimKind::ContextAltered, span,
                             make({{VerdictLabel::False, text}, {VerdictLabel::False, text}, {VerdictLabel::False, text}}));
        ConfusionMatrix cm;
        eval::tally(cm, Veracity::False, s.predicted_positive);
        c.expect(!s.accepted && cm == ConfusionMatrix{0, 0, 1, 0}, "one-span explanation counted fn");
    }
    auto both = eval::score(Veracity::False, ClaimKind::ContextAltered, span,
                            make({{VerdictLabel::False, "150, not 1500. False"}, {VerdictLabel::False, "x False"},
                                  {VerdictLabel::False, "y False"}}));
    c.expect(both.accepted && both.predicted_positive, "both spans accepted as tp");
    auto nc = eval::score(Veracity::True, ClaimKind::Original, std::nullopt,
                          make({{VerdictLabel::NonConclusive, "?"}, {VerdictLabel::NonConclusive, "?"},
                                {VerdictLabel::True, "x True"}}));
    ConfusionMatrix cm;
    eval::tally(cm, Veracity::True, nc.predicted_positive);
    c.expect(!nc.accepted && cm == ConfusionMatrix{0, 1, 0, 0}, "non-conclusive truth counted fp");
    return finish(c, start, 0, "matrix (1,0,1,2), span rule, non-conclusive rule");
}

Outcome dataset_round_trip() {
    Checks c;
    testsupport::TempDir tmp;
    auto start = Clock::now();
    auto llm = inference::ScriptedLlmProvider::from_file(testsupport::fixture("dataset_llm.json"));
    dataset::GenerationPrompts prompts;
    auto entries = dataset::ingest_feeds(dataset::read_feeds_manifest(testsupport::fixture("feeds.json")),
                                         testsupport::fixtures_dir(), nullptr, CalendarDate::parse("2024-08-01"));
    std::vector<ClaimRecord> kept;
    for (const auto& r : dataset::originals_from_entries(entries)) {
        if (dataset::filter_claimworthy(r.headline, *llm, prompts)) kept.push_back(r);
    }
    std::vector<dataset::Derivation> derivations;
    for (const auto& r : kept) derivations.push_back(dataset::derive(r, *llm, prompts));
    auto rows = dataset::review_rows(derivations, dataset::read_directives_jsonl(testsupport::fixture("directives.jsonl")),
                                     kept);
    // The reviewer approves generated negations and authored directives.
    for (auto& row : rows) row.approved = row.note != "templated proposal";
    dataset::write_review_jsonl(tmp / "review.jsonl", rows);
    auto assembled = dataset::assemble_from_review(kept, dataset::read_review_jsonl(tmp / "review.jsonl"));
    {
        std::ofstream out(tmp / "dataset.jsonl", std::ios::binary);
        write_claims_jsonl(out, assembled.records);
    }
    auto records = read_claims_jsonl(tmp / "dataset.jsonl");

    std::map<std::string, std::string> headline_by_id;
    for (const auto& r : records) headline_by_id[r.id] = r.headline;
    std::map<ClaimKind, std::size_t> kinds;
    for (const auto& r : records) {
        ++kinds[r.kind];
        auto v = validate_claim_record(r);
        c.expect(v.empty(), r.id + ": " + (v.empty() ? "" : v.front()));
        if (r.kind == ClaimKind::ContextAltered) {
            auto origin = headline_by_id.find(r.origin_id.value_or(""));
            c.expect(origin != headline_by_id.end() && dataset::revert_alteration(r) == origin->second,
                     r.id + " not reversible");
        }
    }
    // Plan: 5 feed items, 1 repeated headline dropped, 2 rejected as not claim-worthy.
    c.expect(kinds[ClaimKind::Original] == 2, "originals");
    c.expect(kinds[ClaimKind::Negation] == 2, "negations");
    c.expect(kinds[ClaimKind::ContextAltered] == 2, "context alterations");
    c.expect(records.size() == 6, "record count");
    return finish(c, start, 2.0, std::to_string(records.size()) + " rows valid and reversible, kinds 2/2/2");
}

Outcome benchmark_adapter() {
    Checks c;
    auto start = Clock::now();
    eval::BenchmarkAdapterConfig cfg;
    cfg.scheme = eval::BenchmarkScheme::SixWayCollapse;
    cfg.evidence_mode = true;
    auto items = eval::load_benchmark(testsupport::fixture("benchmark_sixway.jsonl"), cfg);
    c.expect(items.size() == 4, "retained rows " + std::to_string(items.size()));
    const std::map<std::string, Veracity> expected{
        {"pf-1", Veracity::True}, {"pf-2", Veracity::True}, {"pf-5", Veracity::False}, {"pf-6", Veracity::False}};
    for (const auto& item : items) {
        auto it = expected.find(item.id);
        c.expect(it != expected.end() && it->second == item.ground_truth, "label mapping for " + item.id);
        c.expect(item.evidence && !item.evidence->empty(), "evidence attached for " + item.id);
    }
    auto detector = testsupport::fixture_detector("benchmark_llm.json");
    EvalReport report = eval::run_benchmark(items, detector, true);
    c.expect(detector.counts().search == 0, "search calls " + std::to_string(detector.counts().search));
    c.expect(report.per_claim.size() == 4, "scored rows");
    for (const auto& row : report.per_claim) c.expect(!row.error, row.id + " errored");
    return finish(c, start, 0, "4 of 6 rows kept, zero search calls in evidence mode");
}

Outcome live_smoke() {
    const char* flag = std::getenv("MANICHECK_LIVE_SMOKE");
    if (!flag || std::string(flag) != "1") {
        return {Outcome::Status::Skip, "set MANICHECK_LIVE_SMOKE=1 with live provider env vars to run"};
    }
    const char* list = std::getenv("MANICHECK_LIVE_HEADLINES");
    if (!list) return {Outcome::Status::Fail, "MANICHECK_LIVE_HEADLINES must name a file of 5 headlines"};
    std::vector<std::string> headlines;
    std::istringstream lines(read_file(list));
    for (std::string line; std::getline(lines, line);) {
        if (!text::trim(line).empty()) headlines.push_back(text::trim(line));
    }
    if (headlines.size() < 5) return {Outcome::Status::Fail, "need 5 headlines"};
    headlines.resize(5);

    Checks c;
    net::set_live_network_allowed(true);
    pipeline::Settings settings;
    if (const char* conf = std::getenv("MANICHECK_LIVE_CONFIG")) settings.load_file(conf);
    settings.apply_environment();
    auto config = pipeline::PipelineConfig::from_settings(settings);
    auto detector = pipeline::Detector::from_config(config);
    std::size_t conclusive = 0;
    std::vector<double> build, infer;
    for (const auto& h : headlines) {
        try {
            Prediction p = detector.detect(h);
            if (p.majority != VerdictLabel::NonConclusive) ++conclusive;
            build.push_back(p.elapsed.context_build_seconds);
            infer.push_back(p.elapsed.inference_seconds);
        } catch (const std::exception& e) {
            c.expect(false, e.what());
        }
    }
    c.expect(conclusive >= 3, std::to_string(conclusive) + " conclusive majorities");
    auto qb = eval::quantiles(build);
    auto qi = eval::quantiles(infer);
    std::ostringstream detail;
    detail << conclusive << "/5 conclusive; context build median " << qb.median << " s (p25 " << qb.p25 << ", p75 "
           << qb.p75 << "); inference median " << qi.median << " s (p25 " << qi.p25 << ", p75 " << qi.p75 << ")";
    if (!c.ok()) return {Outcome::Status::Fail, detail.str() + ": " + c.summary()};
    return {Outcome::Status::Pass, detail.str()};
}

}  // namespace

int main() {
    if (!std::getenv("MANICHECK_TEST_VERBOSE")) log::set_sink([](std::string_view) {});
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"metrics reproduction", metrics_reproduction},
        {"chunker conformance", chunker_conformance},
        {"vector retrieval oracle", retrieval_oracle},
        {"verdict parsing and voting", verdict_and_voting},
        {"end-to-end determinism", end_to_end_determinism},
        {"scoring rules", scoring_rules},
        {"dataset round-trip", dataset_round_trip},
        {"benchmark adapter", benchmark_adapter},
        {"live smoke", live_smoke},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {Outcome::Status::Fail, std::string("threw: ") + e.what()};
        }
        const char* tag = o.status == Outcome::Status::Pass ? "PASS" : o.status == Outcome::Status::Skip ? "SKIP" : "FAIL";
        if (o.status == Outcome::Status::Fail) ++failed;
        std::cout << tag << " criterion " << (i + 1) << " (" << criteria[i].first << "): " << o.detail << "\n";
    }
    return failed == 0 ? 0 : 1;
}
