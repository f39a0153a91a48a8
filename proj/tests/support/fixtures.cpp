#include "support/fixtures.hpp"

#include "manicheck/context/embedding.hpp"
#include "manicheck/inference/llm.hpp"
#include "manicheck/retrieval/search.hpp"

#include <atomic>
#include <random>

namespace testsupport {

std::filesystem::path fixtures_dir() { return MANICHECK_FIXTURES_DIR; }

std::filesystem::path fixture(const std::string& name) { return fixtures_dir() / name; }

TempDir::TempDir() {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("manicheck-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

manicheck::pipeline::Detector fixture_detector(const std::string& llm_script, manicheck::pipeline::Mode mode) {
    manicheck::pipeline::PipelineConfig config;
    config.mode = mode;
    manicheck::pipeline::Providers p;
    p.search = manicheck::retrieval::MockSearchProvider::from_file(fixture("search.json"));
    p.http = manicheck::net::FixtureHttpClient::from_manifest(fixture("pages.json"));
    p.embedder = std::make_shared<manicheck::context::MockHashEmbedding>();
    p.llm = manicheck::inference::ScriptedLlmProvider::from_file(fixture(llm_script));
    return manicheck::pipeline::Detector(config, p);
}

manicheck::pipeline::Settings fixture_settings(const std::string& llm_script) {
    manicheck::pipeline::Settings s;
    s.set("search.fixture", fixture("search.json").string());
    s.set("fetch.fixture", fixture("pages.json").string());
    s.set("llm.script", fixture(llm_script).string());
    return s;
}

}  // namespace testsupport
