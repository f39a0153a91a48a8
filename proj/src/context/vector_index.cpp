#include "manicheck/context/vector_index.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/text.hpp"

#include <algorithm>
#include <cmath>

namespace manicheck::context {

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw InvalidArgument("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()));
    }
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw InvalidArgument("cosine similarity of a zero vector");
    double sim = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::clamp(sim, -1.0, 1.0);
}

VectorIndex::VectorIndex(std::vector<EmbeddedChunk> entries) {
    for (auto& e : entries) add(std::move(e));
}

void VectorIndex::add(EmbeddedChunk entry) {
    if (entry.vector.empty()) throw InvalidArgument("empty embedding vector");
    if (!entries_.empty() && entry.vector.size() != dimension()) {
        throw InvalidArgument("embedding dimension " + std::to_string(entry.vector.size()) +
                              " does not match index dimension " + std::to_string(dimension()));
    }
    entries_.push_back(std::move(entry));
}

std::vector<ScoredEntry> rank_top_n(const VectorIndex& index, std::span<const double> query,
                                    std::size_t n) {
    if (index.empty()) throw EmptyContextError("vector index is empty");
    std::vector<ScoredEntry> scored;
    scored.reserve(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        scored.push_back(ScoredEntry{i, cosine_similarity(query, index.entries()[i].vector)});
    }
    auto better = [](const ScoredEntry& a, const ScoredEntry& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.index < b.index;
    };
    std::size_t keep = std::min(n, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                      scored.end(), better);
    scored.resize(keep);
    return scored;
}

std::vector<EmbeddedChunk> retrieve_top_n(const VectorIndex& index, std::span<const double> query,
                                          std::size_t n) {
    std::vector<EmbeddedChunk> out;
    for (const auto& s : rank_top_n(index, query, n)) out.push_back(index.entries()[s.index]);
    return out;
}

std::string assemble_context(const std::vector<EmbeddedChunk>& chunks, std::size_t max_chars) {
    std::string out;
    std::size_t used = 0;
    for (const auto& c : chunks) {
        std::string block = "[source " + std::to_string(c.chunk.doc_index + 1) + "] " + c.chunk.text;
        std::size_t cost = text::codepoint_length(block) + (out.empty() ? 0 : 2);
        if (used + cost > max_chars) break;
        if (!out.empty()) out += "\n\n";
        out += block;
        used += cost;
    }
    return out;
}

}  // namespace manicheck::context
