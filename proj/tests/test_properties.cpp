#include "doctest.h"

#include "manicheck/context/splitter.hpp"
#include "manicheck/context/vector_index.hpp"
#include "manicheck/core/json_io.hpp"
#include "manicheck/core/validate.hpp"
#include "manicheck/dataset/assembly.hpp"
#include "manicheck/eval/scoring.hpp"
#include "manicheck/inference/verdict.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <array>
#include <random>

using namespace manicheck;

TEST_CASE("chunker invariants on random texts") {
    std::mt19937 rng(2024);
    context::SplitterConfig cfg;
    for (int trial = 0; trial < 200; ++trial) {
        std::string text = testsupport::random_text(rng, rng() % 2001);
        auto chunks = context::split_recursive(text, cfg);
        auto violation = testsupport::chunk_invariant_violation(text, chunks, cfg);
        INFO("trial " << trial);
        CHECK_FALSE(violation);
        if (violation) MESSAGE(*violation);
    }
}

TEST_CASE("chunker invariants across configurations") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        context::SplitterConfig cfg;
        cfg.chunk_size = 1 + rng() % 60;
        cfg.overlap = rng() % cfg.chunk_size;
        std::string text = testsupport::random_text(rng, rng() % 400);
        auto violation = testsupport::chunk_invariant_violation(text, context::split_recursive(text, cfg), cfg);
        INFO("size " << cfg.chunk_size << " overlap " << cfg.overlap);
        CHECK_FALSE(violation);
    }
}

TEST_CASE("retrieve_top_n matches brute force") {
    std::mt19937 rng(17);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t size = 1 + rng() % 1000;
        std::vector<std::vector<double>> rows;
        context::VectorIndex index;
        for (std::size_t i = 0; i < size; ++i) {
            std::vector<double> v(16);
            // Repeat earlier rows now and then so ties occur.
            if (i > 0 && rng() % 10 == 0) {
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
        if (trial % 4 == 0) q = rows[rng() % rows.size()];
        auto expected = testsupport::brute_force_top_n(rows, q, 5);
        auto got = context::retrieve_top_n(index, q, 5);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].chunk.seq == expected[i]);
    }
}

TEST_CASE("parse_verdict fuzzed suffixes") {
    std::mt19937 rng(5);
    const std::array<std::pair<std::string, VerdictLabel>, 6> words{{{"True", VerdictLabel::True},
                                                                      {"TRUE", VerdictLabel::True},
                                                                      {"true", VerdictLabel::True},
                                                                      {"False", VerdictLabel::False},
                                                                      {"FALSE", VerdictLabel::False},
                                                                      {"false", VerdictLabel::False}}};
    for (int i = 0; i < 50; ++i) {
        const auto& [word, label] = words[rng() % words.size()];
        std::string raw = "Checked against the sources. " + testsupport::decorate_decision(rng, word);
        Verdict v = inference::parse_verdict(raw);
        INFO(raw);
        CHECK(v.label == label);
        CHECK(v.explanation == "Checked against the sources.");
        CHECK(v.raw == raw);
    }
}

TEST_CASE("parse_verdict totality and reconstruction") {
    std::mt19937 rng(8);
    const std::string alphabet = "abTrueFalsx .,!?*`'\"\n:;";
    for (int i = 0; i < 2000; ++i) {
        std::string raw;
        std::size_t len = rng() % 40;
        for (std::size_t j = 0; j < len; ++j) raw += alphabet[rng() % alphabet.size()];
        if (rng() % 3 == 0) raw += rng() % 2 ? " True" : " false.";
        Verdict v = inference::parse_verdict(raw);
        CHECK((v.label == VerdictLabel::True || v.label == VerdictLabel::False ||
               v.label == VerdictLabel::NonConclusive));
        if (v.label != VerdictLabel::NonConclusive) {
            std::string rebuilt = v.explanation + " " + std::string(to_string(v.label) == "true" ? "True" : "False");
            CHECK(inference::parse_verdict(rebuilt).label == v.label);
        } else {
            CHECK(v.explanation == raw);
        }
    }
}

TEST_CASE("majority over all 27 ordered triples") {
    const std::array<VerdictLabel, 3> labels{VerdictLabel::True, VerdictLabel::False, VerdictLabel::NonConclusive};
    for (auto a : labels) {
        for (auto b : labels) {
            for (auto c : labels) {
                std::vector<VerdictLabel> triple{a, b, c};
                VerdictLabel m = majority_label(triple);
                CHECK(m == testsupport::expected_majority(a, b, c));
                std::sort(triple.begin(), triple.end());
                do {
                    CHECK(majority_label(triple) == m);
                } while (std::next_permutation(triple.begin(), triple.end()));
            }
        }
    }
}

TEST_CASE("non-conclusive conservatism is monotone") {
    const std::array<VerdictLabel, 3> labels{VerdictLabel::True, VerdictLabel::False, VerdictLabel::NonConclusive};
    for (Veracity truth : {Veracity::True, Veracity::False}) {
        VerdictLabel correct = truth == Veracity::True ? VerdictLabel::True : VerdictLabel::False;
        for (auto a : labels) {
            for (auto b : labels) {
                for (auto c : labels) {
                    std::vector<VerdictLabel> runs{a, b, c};
                    auto accepted = [&](const std::vector<VerdictLabel>& r) {
                        Prediction p;
                        for (auto l : r) p.runs.push_back(Verdict{l, "", ""});
                        p.majority = majority_label(r);
                        return eval::score(truth, std::nullopt, std::nullopt, p).accepted;
                    };
                    bool before = accepted(runs);
                    for (std::size_t i = 0; i < 3; ++i) {
                        if (runs[i] != VerdictLabel::NonConclusive) continue;
                        auto flipped = runs;
                        flipped[i] = correct;
                        CHECK(accepted(flipped) >= before);
                    }
                }
            }
        }
    }
}

TEST_CASE("claim record serialization round-trip") {
    std::mt19937 rng(23);
    const std::vector<std::string> words = {"Ukraine", "wins", "150", "medal", "\xE2\x80\x9Cquoted\xE2\x80\x9D",
                                            "Paris", "protests", "caf\xC3\xA9"};
    for (int i = 0; i < 200; ++i) {
        ClaimRecord r;
        r.id = "p-2024-07-" + std::to_string(10 + i % 20) + "-" + std::to_string(i);
        for (int w = 0; w < 3 + static_cast<int>(rng() % 6); ++w) r.headline += (w ? " " : "") + words[rng() % words.size()];
        r.kind = static_cast<ClaimKind>(rng() % 3);
        r.label = expected_label(r.kind);
        r.provider = "P";
        r.region = rng() % 2 ? "US" : "UK";
        r.published_date = CalendarDate::parse("2024-07-" + std::to_string(10 + i % 20));
        if (r.kind != ClaimKind::Original) r.origin_id = "origin";
        if (r.kind == ClaimKind::ContextAltered) r.manipulation = ManipulationSpan{"Mexico", words[rng() % words.size()]};
        CHECK(claim_record_from_json(Json::parse(dump_json(to_json(r)))) == r);
    }
}

TEST_CASE("alterations are reversible and valid") {
    std::mt19937 rng(31);
    const std::vector<std::string> words = {"Ukraine", "wins", "its", "first", "medal", "in", "Paris", "Olympic"};
    const std::vector<std::string> replacements = {"Mexico", "Brazil", "third", "Tokyo", "loses"};
    int applied = 0;
    for (int i = 0; i < 300; ++i) {
        ClaimRecord origin;
        origin.id = "o-" + std::to_string(i);
        auto shuffled = words;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (std::size_t w = 0; w < shuffled.size(); ++w) origin.headline += (w ? " " : "") + shuffled[w];
        origin.provider = "P";
        origin.region = "UK";
        dataset::AlterationDirective d;
        d.origin_id = origin.id;
        d.original = words[rng() % words.size()];
        d.replacement = replacements[rng() % replacements.size()];
        ClaimRecord alt;
        try {
            alt = dataset::apply_alteration(origin, d);
        } catch (const std::exception&) {
            continue;  // "in" also occurs inside other words
        }
        ++applied;
        CHECK(validate_claim_record(alt).empty());
        CHECK(dataset::revert_alteration(alt) == origin.headline);
    }
    CHECK(applied > 200);
}
