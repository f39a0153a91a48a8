#pragma once

#include "manicheck/pipeline/detector.hpp"

#include <filesystem>
#include <memory>
#include <string>

namespace testsupport {

std::filesystem::path fixtures_dir();
std::filesystem::path fixture(const std::string& name);

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

// Pipeline wired to the offline fixtures: mock search results, the page
// manifest, mock16 embeddings and the named scripted transcript.
manicheck::pipeline::Detector fixture_detector(const std::string& llm_script,
                                               manicheck::pipeline::Mode mode = manicheck::pipeline::Mode::Retrieval);

// The same providers as settings, for code paths that start from a config.
manicheck::pipeline::Settings fixture_settings(const std::string& llm_script);

}  // namespace testsupport
