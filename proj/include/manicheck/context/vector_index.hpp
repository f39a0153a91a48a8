#pragma once

#include "manicheck/core/model.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace manicheck::context {

// dot(a, b) / (|a| |b|) in double precision. Throws InvalidArgument on a
// dimension mismatch or a zero vector.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

// Append-only, in-memory, exact cosine index. Built once per claim, then
// read-only (and safe to share).
class VectorIndex {
public:
    VectorIndex() = default;
    explicit VectorIndex(std::vector<EmbeddedChunk> entries);

    // Throws InvalidArgument if the vector dimension differs from earlier entries.
    void add(EmbeddedChunk entry);

    const std::vector<EmbeddedChunk>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t dimension() const noexcept { return entries_.empty() ? 0 : entries_.front().vector.size(); }

private:
    std::vector<EmbeddedChunk> entries_;
};

struct ScoredEntry {
    std::size_t index = 0;  // insertion index
    double similarity = 0.0;
};

// The n entries most similar to `query`, highest first; equal scores keep
// insertion order. Throws EmptyContextError on an empty index.
std::vector<ScoredEntry> rank_top_n(const VectorIndex& index, std::span<const double> query,
                                    std::size_t n);

std::vector<EmbeddedChunk> retrieve_top_n(const VectorIndex& index, std::span<const double> query,
                                          std::size_t n);

inline constexpr std::size_t kDefaultContextChars = 4000;

// "[source <doc_index + 1>] <text>" blocks separated by a blank line. Whole
// chunks are dropped from the first one that would push the total (in code
// points) past max_chars.
std::string assemble_context(const std::vector<EmbeddedChunk>& chunks,
                             std::size_t max_chars = kDefaultContextChars);

}  // namespace manicheck::context
