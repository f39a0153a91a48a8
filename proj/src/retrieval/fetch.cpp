#include "manicheck/retrieval/fetch.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/hash.hpp"
#include "manicheck/core/json_io.hpp"
#include "manicheck/core/log.hpp"
#include "manicheck/core/text.hpp"
#include "manicheck/retrieval/html_extract.hpp"

#include <algorithm>
#include <future>
#include <set>

namespace manicheck::retrieval {

void FetchPolicy::validate() const {
    if (!(timeout_seconds > 0.0)) throw ConfigError("fetch timeout must be positive");
    if (max_bytes < 4096) throw ConfigError("fetch max_bytes must be at least 4096");
    if (parallelism == 0) throw ConfigError("fetch parallelism must be at least 1");
}

std::string cache_key(std::string_view url) { return sha256_hex(url); }

PageCache::PageCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path PageCache::path_for(std::string_view url) const {
    return dir_ / (cache_key(url) + ".json");
}

std::optional<Document> PageCache::load(const std::string& url) const {
    auto path = path_for(url);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    try {
        Document doc = document_from_json(read_json_file(path));
        if (doc.url != url) return std::nullopt;  // digest collision or foreign file
        doc.rank = 1;
        return doc;
    } catch (const Error& e) {
        log::warn("ignoring unreadable cache entry " + path.string() + ": " + e.what());
        return std::nullopt;
    }
}

void PageCache::store(const Document& doc) const {
    Json j{{"url", doc.url}, {"fetched_at", doc.fetched_at}, {"title", doc.title}, {"text", doc.text}};
    write_file_atomic(path_for(doc.url), dump_json(j, 2) + "\n");
}

std::size_t PageCache::purge() const {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir_, ec)) return 0;
    std::size_t removed = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
        const auto& p = entry.path();
        if (entry.is_regular_file() && p.extension() == ".json" && p.stem().string().size() == 64) {
            std::filesystem::remove(p, ec);
            if (!ec) ++removed;
        }
    }
    return removed;
}

namespace {

bool is_supported_type(std::string_view content_type) {
    if (content_type.empty()) return true;
    std::string ct = text::ascii_lower(content_type);
    return ct.find("html") != std::string::npos || ct.find("xml") != std::string::npos ||
           ct.find("text/plain") != std::string::npos;
}

}  // namespace

Document fetch_and_extract(const std::string& url, const FetchPolicy& policy,
                           net::HttpClient& http) {
    if (!net::is_http_url(url)) throw FetchError(url, "not an http(s) URL");

    std::optional<PageCache> cache;
    if (policy.cache_dir) {
        cache.emplace(*policy.cache_dir);
        if (auto hit = cache->load(url)) return *hit;
    }
    if (policy.cache_only) throw FetchError(url, "not cached and network fetching is disabled");

    net::HttpRequest req;
    req.url = url;
    req.timeout_seconds = policy.timeout_seconds;
    req.max_bytes = policy.max_bytes;
    req.headers.emplace_back("User-Agent", policy.user_agent);
    req.headers.emplace_back("Accept", "text/html,application/xhtml+xml,text/plain;q=0.8");

    net::HttpResponse resp;
    try {
        resp = http.send(req);
    } catch (const Error& e) {
        throw FetchError(url, e.what());
    }
    if (resp.status < 200 || resp.status >= 300) {
        throw FetchError(url, "HTTP status " + std::to_string(resp.status));
    }
    if (resp.truncated) throw FetchError(url, "body exceeds " + std::to_string(policy.max_bytes) + " bytes");
    if (!is_supported_type(resp.content_type)) {
        throw FetchError(url, "unsupported content type " + resp.content_type);
    }

    Document doc;
    doc.url = url;
    doc.rank = 1;
    doc.fetched_at = utc_timestamp_now();
    if (text::ascii_lower(resp.content_type).find("text/plain") != std::string::npos) {
        doc.text = html::normalize_plain_text(resp.body);
    } else {
        auto page = html::extract(resp.body);
        doc.title = std::move(page.title);
        doc.text = std::move(page.text);
    }
    if (doc.text.empty()) throw FetchError(url, "no text extracted");
    if (cache) cache->store(doc);
    return doc;
}

std::vector<Document> collect_top_k(const std::string& query, std::size_t k,
                                    SearchProvider& provider, const FetchPolicy& policy,
                                    net::HttpClient& http,
                                    const std::optional<std::string>& locale) {
    if (k == 0) throw InvalidArgument("k must be at least 1");
    policy.validate();

    std::vector<SearchHit> hits = provider.search(query, kOverFetchFactor * k, locale);
    std::sort(hits.begin(), hits.end(),
              [](const SearchHit& a, const SearchHit& b) { return a.rank < b.rank; });

    // Drop repeated URLs up front so waves never fetch the same page twice.
    std::vector<SearchHit> queue;
    std::set<std::string> seen;
    for (auto& h : hits) {
        if (seen.insert(h.url).second) queue.push_back(std::move(h));
    }

    std::vector<Document> docs;
    std::size_t next = 0;
    while (docs.size() < k && next < queue.size()) {
        // Fetch exactly as many hits as are still missing; keep rank order.
        std::size_t wave = std::min({k - docs.size(), queue.size() - next, policy.parallelism});
        std::vector<std::future<Document>> pending;
        pending.reserve(wave);
        for (std::size_t i = 0; i < wave; ++i) {
            const SearchHit& hit = queue[next + i];
            pending.push_back(std::async(wave > 1 ? std::launch::async : std::launch::deferred,
                                         [&hit, &policy, &http] {
                                             return fetch_and_extract(hit.url, policy, http);
                                         }));
        }
        for (std::size_t i = 0; i < wave; ++i) {
            const SearchHit& hit = queue[next + i];
            try {
                Document doc = pending[i].get();
                doc.rank = hit.rank;
                if (doc.title.empty()) doc.title = hit.title;
                docs.push_back(std::move(doc));
            } catch (const FetchError& e) {
                log::warn(std::string("skipping search result ") + std::to_string(hit.rank) + ": " + e.what());
            }
        }
        next += wave;
    }
    if (docs.empty()) {
        throw EmptyContextError("no retrievable documents for query \"" + query + "\"");
    }
    return docs;
}

}  // namespace manicheck::retrieval
