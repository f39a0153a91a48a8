#include "manicheck/context/builder.hpp"

#include "manicheck/core/errors.hpp"

namespace manicheck::context {

BuiltContext build_context(std::string_view claim, const std::vector<Document>& docs,
                           const SplitterConfig& splitter, EmbeddingProvider& embedder,
                           std::size_t top_n, std::size_t max_chars) {
    if (top_n == 0) throw InvalidArgument("top_n must be positive");
    splitter.validate();

    std::vector<Chunk> chunks;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        auto part = split_recursive(docs[d].text, splitter, d);
        chunks.insert(chunks.end(), std::make_move_iterator(part.begin()),
                      std::make_move_iterator(part.end()));
    }
    if (chunks.empty()) throw EmptyContextError("retrieved documents contain no text");

    BuiltContext out;
    out.chunk_count = chunks.size();
    VectorIndex index(embed_batch(chunks, embedder));

    std::vector<Vector> query;
    try {
        query = embedder.embed({std::string(claim)});
    } catch (const ProviderError&) {
        throw;
    } catch (const Error& e) {
        throw ProviderError("embedding", std::string("claim embedding failed: ") + e.what());
    }
    if (query.size() != 1) throw ProviderError("embedding", "claim embedding returned no vector", false);

    out.selected = retrieve_top_n(index, query.front(), top_n);
    out.text = assemble_context(out.selected, max_chars);

    return out;
}

}  // namespace manicheck::context
