#pragma once

#include "manicheck/context/splitter.hpp"
#include "manicheck/core/model.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

// Indices of the n most cosine-similar rows, scanning every row; ties keep
// the lower index. Written without the library's similarity code.
std::vector<std::size_t> brute_force_top_n(const std::vector<std::vector<double>>& rows,
                                           const std::vector<double>& query, std::size_t n);

// First violated chunker invariant for `chunks` split from `text`, if any:
// length bound, exact text at char_start, coverage, ordering, overlap bound
// and contiguous seq numbers.
std::optional<std::string> chunk_invariant_violation(const std::string& text,
                                                     const std::vector<manicheck::Chunk>& chunks,
                                                     const manicheck::context::SplitterConfig& config);

// Text of `length` code points drawn from letters, digits, spaces, newlines,
// blank lines and a few multi-byte characters.
std::string random_text(std::mt19937& rng, std::size_t length);

// A decision word wrapped in randomly chosen trailing punctuation, asterisks,
// backticks, quotes and whitespace.
std::string decorate_decision(std::mt19937& rng, const std::string& word);

// Majority of three labels computed by counting, independent of the library.
manicheck::VerdictLabel expected_majority(manicheck::VerdictLabel a, manicheck::VerdictLabel b,
                                          manicheck::VerdictLabel c);

}  // namespace testsupport
