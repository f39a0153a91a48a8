#include "manicheck/context/embedding.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/hash.hpp"
#include "manicheck/core/json_io.hpp"
#include "manicheck/core/text.hpp"

#include <cmath>

namespace manicheck::context {

Vector MockHashEmbedding::embed_one(std::string_view text) {
    Vector v(kDimension, 0.0);
    std::u32string cps = text::to_utf32(text);
    for (std::size_t i = 0; i < cps.size(); ++i) {
        std::string utf8 = text::to_utf8(std::u32string_view(&cps[i], 1));
        double h = 2.0 * std::ldexp(static_cast<double>(fnv1a64(utf8) >> 11), -53) - 1.0;
        v[i % kDimension] += h / (1.0 + static_cast<double>(i));
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) {
        Vector basis(kDimension, 0.0);
        basis[0] = 1.0;
        return basis;
    }
    for (double& x : v) x /= norm;
    return v;
}

std::vector<Vector> MockHashEmbedding::embed(const std::vector<std::string>& texts) {
    std::vector<Vector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(embed_one(t));
    return out;
}

LiveEmbeddingProvider::LiveEmbeddingProvider(std::string endpoint, std::string model,
                                             std::shared_ptr<net::HttpClient> http,
                                             std::string api_key, double timeout_seconds)
    : endpoint_(std::move(endpoint)), model_(std::move(model)), http_(std::move(http)),
      api_key_(std::move(api_key)), timeout_seconds_(timeout_seconds) {
    if (!net::is_http_url(endpoint_)) throw ConfigError("embedding endpoint is not an http(s) URL: " + endpoint_);
}

std::size_t LiveEmbeddingProvider::dimension() const { return dimension_.load(); }

std::vector<Vector> LiveEmbeddingProvider::embed(const std::vector<std::string>& texts) {
    if (texts.empty()) return {};
    net::HttpRequest req;
    req.method = "POST";
    req.url = endpoint_;
    req.timeout_seconds = timeout_seconds_;
    req.content_type = "application/json";
    req.body = dump_json(Json{{"model", model_}, {"input", texts}});
    if (!api_key_.empty()) req.headers.emplace_back("Authorization", "Bearer " + api_key_);
    net::HttpResponse resp = http_->send(req);
    if (resp.status < 200 || resp.status >= 300) {
        throw ProviderError("embed", "HTTP " + std::to_string(resp.status), resp.status >= 500);
    }
    Json body;
    try {
        body = Json::parse(resp.body);
    } catch (const Json::parse_error&) {
        throw ProviderError("embed", "response is not JSON", false);
    }
    std::vector<Vector> out;
    try {
        if (auto it = body.find("embeddings"); it != body.end()) {
            for (const auto& row : *it) out.push_back(row.get<Vector>());
        } else if (auto data = body.find("data"); data != body.end()) {
            for (const auto& row : *data) out.push_back(row.at("embedding").get<Vector>());
        } else {
            throw ProviderError("embed", "response has no embeddings", false);
        }
    } catch (const Json::exception& e) {
        throw ProviderError("embed", std::string("malformed embeddings: ") + e.what(), false);
    }
    if (!out.empty()) {
        std::size_t expected = 0;
        dimension_.compare_exchange_strong(expected, out.front().size());
    }
    return out;
}

std::vector<EmbeddedChunk> embed_batch(const std::vector<Chunk>& chunks, EmbeddingProvider& provider,
                                       std::size_t batch_size) {
    if (batch_size == 0) throw InvalidArgument("batch_size must be positive");
    std::vector<EmbeddedChunk> out;
    out.reserve(chunks.size());
    std::size_t dim = provider.dimension();
    for (std::size_t begin = 0; begin < chunks.size(); begin += batch_size) {
        std::size_t end = std::min(chunks.size(), begin + batch_size);
        std::vector<std::string> texts;
        for (std::size_t i = begin; i < end; ++i) texts.push_back(chunks[i].text);

        auto ids = [&] {
            std::string s;
            for (std::size_t i = begin; i < end; ++i) {
                if (!s.empty()) s += ',';
                s += std::to_string(chunks[i].doc_index) + ":" + std::to_string(chunks[i].seq);
            }
            return s;
        };
        std::vector<Vector> vectors;
        try {
            vectors = provider.embed(texts);
        } catch (const ProviderError& e) {
            throw ProviderError("embed", std::string(e.what()) + " [chunks " + ids() + "]", e.transport());
        } catch (const Error& e) {
            throw ProviderError("embed", std::string(e.what()) + " [chunks " + ids() + "]", false);
        }
        if (vectors.size() != texts.size()) {
            throw ProviderError("embed", "provider returned " + std::to_string(vectors.size()) +
                                             " vectors for " + std::to_string(texts.size()) +
                                             " texts [chunks " + ids() + "]", false);
        }
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            if (dim == 0) dim = vectors[i].size();
            if (vectors[i].size() != dim || dim == 0) {
                throw ProviderError("embed", "inconsistent embedding dimension [chunks " + ids() + "]", false);
            }
            out.push_back(EmbeddedChunk{chunks[begin + i], std::move(vectors[i])});
        }
    }
    return out;
}

}  // namespace manicheck::context
