#pragma once

#include "manicheck/core/model.hpp"
#include "manicheck/retrieval/http.hpp"
#include "manicheck/retrieval/search.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace manicheck::retrieval {

struct FetchPolicy {
    double timeout_seconds = 15.0;
    std::size_t max_bytes = 4 * 1024 * 1024;
    std::string user_agent = "manicheck/0.1 (+claim verification)";
    std::optional<std::filesystem::path> cache_dir;
    bool cache_only = false;      // never touch the network; uncached URLs fail
    std::size_t parallelism = 4;  // concurrent fetches per collection wave

    // Throws ConfigError unless timeout_seconds > 0 and max_bytes >= 4096.
    void validate() const;
};

// Lowercase hex SHA-256 of the URL bytes.
std::string cache_key(std::string_view url);

// One JSON file per URL digest: {url, fetched_at, title, text}. Concurrent
// writers of distinct keys are safe; the last writer of a key wins.
class PageCache {
public:
    explicit PageCache(std::filesystem::path dir);

    std::optional<Document> load(const std::string& url) const;
    void store(const Document& doc) const;
    // Removes every cache entry and returns how many were deleted.
    std::size_t purge() const;

    std::filesystem::path path_for(std::string_view url) const;

private:
    std::filesystem::path dir_;
};

// Downloads `url` and reduces it to visible text. A cache hit returns the
// stored Document without any network call. Every failure (transport,
// non-2xx, oversize body, unsupported type, empty text) is a FetchError.
// The returned Document has rank 1; callers assign the search rank.
Document fetch_and_extract(const std::string& url, const FetchPolicy& policy,
                           net::HttpClient& http);

inline constexpr std::size_t kOverFetchFactor = 3;

// Walks the hits for `query` in rank order and keeps the first `k` pages that
// fetch and extract cleanly, skipping failures and duplicate URLs. Requests
// kOverFetchFactor * k hits. Throws EmptyContextError if nothing was
// collected; search provider errors propagate.
std::vector<Document> collect_top_k(const std::string& query, std::size_t k,
                                    SearchProvider& provider, const FetchPolicy& policy,
                                    net::HttpClient& http,
                                    const std::optional<std::string>& locale = std::nullopt);

}  // namespace manicheck::retrieval
