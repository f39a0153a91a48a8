#pragma once

#include "manicheck/context/embedding.hpp"
#include "manicheck/context/splitter.hpp"
#include "manicheck/context/vector_index.hpp"
#include "manicheck/core/model.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace manicheck::context {

inline constexpr std::size_t kDefaultTopChunks = 5;

struct BuiltContext {
    std::string text;                      // assembled context block
    std::vector<EmbeddedChunk> selected;   // retrieval order
    std::size_t chunk_count = 0;           // chunks indexed across all documents
};

// Splits every document, embeds the chunks and the claim, ranks by cosine
// and assembles the top n chunks. The claim (not the search query) is the
// retrieval query. Throws EmptyContextError when no document yields a chunk.
BuiltContext build_context(std::string_view claim, const std::vector<Document>& docs,
                           const SplitterConfig& splitter, EmbeddingProvider& embedder,
                           std::size_t top_n = kDefaultTopChunks,
                           std::size_t max_chars = kDefaultContextChars);

}  // namespace manicheck::context
