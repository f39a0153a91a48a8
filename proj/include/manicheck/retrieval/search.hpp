#pragma once

#include "manicheck/core/json_io.hpp"
#include "manicheck/retrieval/http.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace manicheck::retrieval {

struct SearchHit {
    std::string url;
    std::string title;
    std::string snippet;
    int rank = 0;  // 1-based, contiguous within one result list

    friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

// Implementations must be safe to call from several threads at once.
class SearchProvider {
public:
    virtual ~SearchProvider() = default;
    virtual std::vector<SearchHit> search(const std::string& query, std::size_t max_results,
                                          const std::optional<std::string>& locale) = 0;
};

inline constexpr std::size_t kDefaultQueryWords = 32;

// First `max_words` whitespace-delimited words of the claim joined by single
// spaces. Region and date are never embedded in the query; the region travels
// as the provider locale. Throws InvalidArgument for a blank claim.
std::string build_search_query(std::string_view claim, std::size_t max_words = kDefaultQueryWords);

// Turns a search API response into ranked hits. Accepts a top-level array or
// the first array found under "organic_results", "results", "items" or "hits".
// Entries need a "link" (or "url"); ranks follow array position.
std::vector<SearchHit> parse_search_response(const Json& response, std::size_t max_results);

// Offline provider backed by a JSON fixture {"<query>": [{link,title,snippet}, ...]}.
// Lookup is an exact match on the built query; unknown queries return no hits.
class MockSearchProvider final : public SearchProvider {
public:
    explicit MockSearchProvider(const Json& fixture);
    static std::shared_ptr<MockSearchProvider> from_file(const std::filesystem::path& path);

    std::vector<SearchHit> search(const std::string& query, std::size_t max_results,
                                  const std::optional<std::string>& locale) override;

private:
    std::map<std::string, Json> results_;
};

// HTTP GET <endpoint>?q=..&num=..&gl=..&api_key=.. returning JSON.
class LiveSearchProvider final : public SearchProvider {
public:
    LiveSearchProvider(std::string endpoint, std::string api_key,
                       std::shared_ptr<net::HttpClient> http, double timeout_seconds = 20.0);

    std::vector<SearchHit> search(const std::string& query, std::size_t max_results,
                                  const std::optional<std::string>& locale) override;

private:
    std::string endpoint_;
    std::string api_key_;
    std::shared_ptr<net::HttpClient> http_;
    double timeout_seconds_;
};

}  // namespace manicheck::retrieval
