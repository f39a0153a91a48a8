#pragma once

#include "manicheck/core/model.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace manicheck::context {

struct SplitterConfig {
    std::size_t chunk_size = 100;  // code points
    std::size_t overlap = 20;      // code points
    std::vector<std::string> separators{"\n\n", "\n", " ", ""};

    // Throws ConfigError unless chunk_size > 0, overlap < chunk_size and the
    // separator list ends with "".
    void validate() const;
};

// Recursive character splitting.
//
// 1. Text no longer than chunk_size is returned whole ([] when empty).
// 2. The first separator that occurs in the text splits it into pieces; each
//    piece keeps its trailing separator.
// 3. Pieces are merged greedily into a window while it stays within
//    chunk_size. On overflow the window is emitted and the next window starts
//    with the last min(overlap, emitted length) code points of it, shortened
//    further if needed so that it still fits alongside the next piece.
// 4. A piece longer than chunk_size is split recursively with the remaining
//    separators. The empty separator cuts raw slices of chunk_size code
//    points with stride chunk_size - overlap.
//
// Every chunk is a contiguous slice of `text`; char_start is its code point
// offset. doc_index is copied into each chunk and seq counts from 0.
std::vector<Chunk> split_recursive(std::string_view text, const SplitterConfig& config,
                                   std::size_t doc_index = 0);

}  // namespace manicheck::context
