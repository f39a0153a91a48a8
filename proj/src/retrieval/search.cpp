#include "manicheck/retrieval/search.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/text.hpp"

namespace manicheck::retrieval {

std::string build_search_query(std::string_view claim, std::size_t max_words) {
    auto words = text::split_words(claim);
    if (words.empty()) throw InvalidArgument("claim must be non-empty");
    if (max_words > 0 && words.size() > max_words) words.resize(max_words);
    return text::join(words, " ");
}

std::vector<SearchHit> parse_search_response(const Json& response, std::size_t max_results) {
    const Json* list = nullptr;
    if (response.is_array()) {
        list = &response;
    } else if (response.is_object()) {
        for (const char* key : {"organic_results", "results", "items", "hits"}) {
            auto it = response.find(key);
            if (it != response.end() && it->is_array()) {
                list = &*it;
                break;
            }
        }
    }
    if (!list) throw FormatError("search response has no result array");

    std::vector<SearchHit> hits;
    for (const auto& item : *list) {
        if (hits.size() >= max_results) break;
        if (!item.is_object()) continue;
        std::string url;
        for (const char* key : {"link", "url"}) {
            auto it = item.find(key);
            if (it != item.end() && it->is_string()) {
                url = it->get<std::string>();
                break;
            }
        }
        if (url.empty()) continue;
        SearchHit hit;
        hit.url = std::move(url);
        hit.title = item.value("title", std::string{});
        hit.snippet = item.value("snippet", std::string{});
        hit.rank = static_cast<int>(hits.size()) + 1;
        hits.push_back(std::move(hit));
    }
    return hits;
}

MockSearchProvider::MockSearchProvider(const Json& fixture) {
    if (!fixture.is_object()) throw FormatError("search fixture must map queries to hit arrays");
    for (const auto& [query, hits] : fixture.items()) {
        if (!hits.is_array()) throw FormatError("search fixture entry for \"" + query + "\" must be an array");
        results_.emplace(query, hits);
    }
}

std::shared_ptr<MockSearchProvider> MockSearchProvider::from_file(const std::filesystem::path& path) {
    return std::make_shared<MockSearchProvider>(read_json_file(path));
}

std::vector<SearchHit> MockSearchProvider::search(const std::string& query, std::size_t max_results,
                                                  const std::optional<std::string>&) {
    auto it = results_.find(query);
    if (it == results_.end()) return {};
    return parse_search_response(it->second, max_results);
}

LiveSearchProvider::LiveSearchProvider(std::string endpoint, std::string api_key,
                                       std::shared_ptr<net::HttpClient> http,
                                       double timeout_seconds)
    : endpoint_(std::move(endpoint)), api_key_(std::move(api_key)), http_(std::move(http)),
      timeout_seconds_(timeout_seconds) {
    if (!net::is_http_url(endpoint_)) throw ConfigError("search endpoint is not an http(s) URL: " + endpoint_);
}

std::vector<SearchHit> LiveSearchProvider::search(const std::string& query, std::size_t max_results,
                                                  const std::optional<std::string>& locale) {
    std::vector<std::pair<std::string, std::string>> params{{"q", query},
                                                            {"num", std::to_string(max_results)}};
    if (locale && !locale->empty()) params.emplace_back("gl", *locale);
    if (!api_key_.empty()) params.emplace_back("api_key", api_key_);

    net::HttpRequest req;
    req.url = net::with_query(endpoint_, params);
    req.timeout_seconds = timeout_seconds_;
    req.headers.emplace_back("Accept", "application/json");
    net::HttpResponse resp = http_->send(req);
    if (resp.status < 200 || resp.status >= 300) {
        throw ProviderError("search", "HTTP " + std::to_string(resp.status), resp.status >= 500);
    }
    Json body;
    try {
        body = Json::parse(resp.body);
    } catch (const Json::parse_error&) {
        throw ProviderError("search", "response is not JSON", false);
    }
    try {
        return parse_search_response(body, max_results);
    } catch (const FormatError& e) {
        throw ProviderError("search", e.what(), false);
    }
}

}  // namespace manicheck::retrieval
