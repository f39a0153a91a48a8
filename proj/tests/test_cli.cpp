#include "doctest.h"

#include "manicheck/core/json_io.hpp"
#include "manicheck/core/validate.hpp"
#include "manicheck/dataset/assembly.hpp"
#include "manicheck/pipeline/cli.hpp"
#include "support/fixtures.hpp"

#include <fstream>
#include <sstream>

using namespace manicheck;
using testsupport::fixture;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run_cli(args, out, err, [](const char*) { return std::optional<std::string>{}; });
    return {code, out.str(), err.str()};
}

std::vector<std::string> fixtures_flags(const std::string& script) {
    return {"--search-fixture", fixture("search.json").string(), "--pages-fixture",
            fixture("pages.json").string(), "--llm-script", fixture(script).string()};
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
    auto r = run({"detect"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(run({"detect", "claim", "--bogus"}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run(concat(fixtures_flags("golden_llm.json"), {"detect", "claim", "--runs", "2"})).code == cli::kExitUsage);
    CHECK(run({"metrics"}).code == cli::kExitUsage);
}

TEST_CASE("detect --no-retrieval --json") {
    auto r = run(concat(fixtures_flags("scored_llm.json"),
                        {"--json", "detect", "Ukraine wins its first medal in Paris Olympic", "--no-retrieval"}));
    REQUIRE(r.code == cli::kExitOk);
    Json j = Json::parse(r.out);
    CHECK(j["majority"] == "true");
    CHECK(j["mode"] == "ablation");
    CHECK(j["runs"].size() == 3);
}

TEST_CASE("detect with retrieval prints a human summary") {
    auto r = run(concat(fixtures_flags("golden_llm.json"),
                        {"detect", "At least 1500 people have been killed in Bangladesh protests", "--region", "UK",
                         "--date", "2024-07-21"}));
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.find("False") != std::string::npos);
    CHECK(r.out.find("news.example.org") != std::string::npos);
}

TEST_CASE("operational errors exit 1") {
    testsupport::TempDir tmp;
    auto r = run(concat(fixtures_flags("scored_llm.json"),
                        {"eval", "--dataset", (tmp / "missing.jsonl").string(), "--out", (tmp / "r.json").string()}));
    CHECK(r.code == cli::kExitFailure);
    CHECK(r.err.find("missing.jsonl") != std::string::npos);
    CHECK(run({"--config", (tmp / "nope.conf").string(), "metrics", "--tp", "1", "--fp", "0", "--fn", "0", "--tn", "0"})
              .code == cli::kExitFailure);
}

TEST_CASE("metrics from counts and from a report") {
    auto r = run({"--json", "metrics", "--tp", "3956", "--fp", "1017", "--fn", "314", "--tn", "1483"});
    REQUIRE(r.code == cli::kExitOk);
    Json j = Json::parse(r.out);
    CHECK(j["metrics"]["precision"].get<double>() == doctest::Approx(0.7955).epsilon(0.001));

    testsupport::TempDir tmp;
    auto report = (tmp / "report.json").string();
    REQUIRE(run(concat(fixtures_flags("scored_llm.json"),
                       {"ablation", "--dataset", fixture("scored_dataset.jsonl").string(), "--out", report}))
                .code == cli::kExitOk);
    auto m = run({"--json", "metrics", "--report", report});
    REQUIRE(m.code == cli::kExitOk);
    CHECK(Json::parse(m.out)["metrics"]["accuracy"].get<double>() == doctest::Approx(0.75));
}

TEST_CASE("eval and ablation reports") {
    testsupport::TempDir tmp;
    auto out = (tmp / "golden.json").string();
    auto r = run(concat(fixtures_flags("golden_llm.json"),
                        {"eval", "--dataset", fixture("golden_dataset.jsonl").string(), "--out", out, "--parallel", "2"}));
    REQUIRE(r.code == cli::kExitOk);
    Json report = read_json_file(out);
    CHECK(report["mode"] == "retrieval");
    CHECK(report["confusion"]["tp"] == 2);
    CHECK(report["confusion"]["tn"] == 2);
    CHECK(report.contains("timing"));

    auto ab = (tmp / "ablation.json").string();
    REQUIRE(run(concat(fixtures_flags("scored_llm.json"),
                       {"eval", "--dataset", fixture("scored_dataset.jsonl").string(), "--out", ab, "--no-retrieval"}))
                .code == cli::kExitOk);
    Json abr = read_json_file(ab);
    CHECK(abr["mode"] == "ablation");
    CHECK(abr["confusion"]["fn"] == 1);
}

TEST_CASE("benchmark in evidence mode") {
    testsupport::TempDir tmp;
    auto out = (tmp / "bench.json").string();
    auto r = run(concat(fixtures_flags("benchmark_llm.json"),
                        {"benchmark", "--data", fixture("benchmark_sixway.jsonl").string(), "--scheme", "sixway",
                         "--evidence-mode", "--out", out}));
    REQUIRE(r.code == cli::kExitOk);
    Json report = read_json_file(out);
    CHECK(report["mode"] == "evidence");
    CHECK(report["per_claim"].size() == 4);
    CHECK(run({"benchmark", "--data", "x", "--scheme", "tenway", "--out", "y"}).code == cli::kExitUsage);
}

TEST_CASE("dataset workflow") {
    testsupport::TempDir tmp;
    auto llm = std::vector<std::string>{"--llm-script", fixture("dataset_llm.json").string()};
    auto originals = (tmp / "originals.jsonl").string();
    auto derivations = (tmp / "derivations.jsonl").string();
    auto review = (tmp / "review.jsonl").string();
    auto dataset = (tmp / "dataset.jsonl").string();

    REQUIRE(run(concat(llm, {"dataset", "ingest", "--feeds", fixture("feeds.json").string(), "--out", originals,
                             "--filter", "--ingest-date", "2024-08-01"}))
                .code == cli::kExitOk);
    CHECK(read_claims_jsonl(std::filesystem::path(originals)).size() == 2);

    REQUIRE(run(concat(llm, {"dataset", "derive", "--originals", originals, "--out", derivations})).code ==
            cli::kExitOk);
    REQUIRE(run({"dataset", "review-export", "--originals", originals, "--derivations", derivations, "--directives",
                 fixture("directives.jsonl").string(), "--out", review})
                .code == cli::kExitOk);

    // Before review nothing is approved, so assembly keeps only the originals.
    REQUIRE(run({"dataset", "assemble", "--originals", originals, "--review", review, "--out", dataset}).code ==
            cli::kExitOk);
    CHECK(read_claims_jsonl(std::filesystem::path(dataset)).size() == 2);

    auto rows = dataset::read_review_jsonl(review);
    for (auto& row : rows) row.approved = row.note != "templated proposal";
    dataset::write_review_jsonl(review, rows);
    auto r = run({"--json", "dataset", "assemble", "--originals", originals, "--review", review, "--out", dataset});
    REQUIRE(r.code == cli::kExitOk);
    auto records = read_claims_jsonl(std::filesystem::path(dataset));
    CHECK(records.size() == 6);
    for (const auto& rec : records) CHECK(validate_claim_record(rec).empty());
    Json summary = Json::parse(r.out);
    CHECK(summary["by_kind"]["context_altered"] == 2);
}

TEST_CASE("cache purge") {
    testsupport::TempDir tmp;
    auto cache = (tmp / "cache").string();
    REQUIRE(run(concat(fixtures_flags("golden_llm.json"),
                       {"--cache-dir", cache, "detect", "At least 150 people have been killed in Bangladesh protests"}))
                .code == cli::kExitOk);
    auto r = run({"--cache-dir", cache, "--json", "cache", "purge"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(Json::parse(r.out)["removed"] == 3);
}
