#pragma once

#include "manicheck/core/model.hpp"
#include "manicheck/retrieval/http.hpp"

#include <atomic>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace manicheck::context {

// Implementations must be safe to share across threads and must map
// identical text to identical vectors.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::vector<Vector> embed(const std::vector<std::string>& texts) = 0;
    // 0 when not known until the first call.
    virtual std::size_t dimension() const = 0;
};

// Deterministic offline embedding ("mock16"). For each code point c at
// position i, h(c) / (1 + i) is added to bucket i mod 16, where h maps the
// 64-bit FNV-1a hash of c's UTF-8 bytes onto [-1, 1):
//     h(c) = 2 * (fnv1a64(utf8(c)) >> 11) * 2^-53 - 1
// The sum is L2-normalised. Empty text and zero sums map to the first basis
// vector.
class MockHashEmbedding final : public EmbeddingProvider {
public:
    static constexpr std::size_t kDimension = 16;

    std::vector<Vector> embed(const std::vector<std::string>& texts) override;
    std::size_t dimension() const override { return kDimension; }

    static Vector embed_one(std::string_view text);
};

// POST {model, input: [...]} -> {embeddings: [[...]]}. OpenAI-style
// {data: [{embedding: [...]}]} responses are accepted too.
class LiveEmbeddingProvider final : public EmbeddingProvider {
public:
    LiveEmbeddingProvider(std::string endpoint, std::string model,
                          std::shared_ptr<net::HttpClient> http, std::string api_key = {},
                          double timeout_seconds = 60.0);

    std::vector<Vector> embed(const std::vector<std::string>& texts) override;
    std::size_t dimension() const override;

private:
    std::string endpoint_;
    std::string model_;
    std::shared_ptr<net::HttpClient> http_;
    std::string api_key_;
    double timeout_seconds_;
    mutable std::atomic<std::size_t> dimension_{0};
};

inline constexpr std::size_t kEmbedBatchSize = 64;

// Pairs each chunk with its embedding, in order, calling the provider with at
// most `batch_size` texts at a time. Provider failures are rethrown as
// ProviderError naming the chunks of the failing batch.
std::vector<EmbeddedChunk> embed_batch(const std::vector<Chunk>& chunks, EmbeddingProvider& provider,
                                       std::size_t batch_size = kEmbedBatchSize);

}  // namespace manicheck::context
