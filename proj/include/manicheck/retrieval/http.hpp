#pragma once

// HTTP transport used by the live search, embedding and LLM providers and by
// the page fetcher. Tests swap in FixtureHttpClient; the live client refuses
// to connect while the process-wide network guard is closed.

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace manicheck::net {

struct HttpRequest {
    std::string method = "GET";
    std::string url;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body;
    std::string content_type;
    double timeout_seconds = 10.0;
    std::size_t max_bytes = 8 * 1024 * 1024;
};

struct HttpResponse {
    int status = 0;
    std::string body;
    std::string content_type;
    bool truncated = false;  // body exceeded max_bytes and was cut off
};

// Transport failures (DNS, connect, timeout) throw ProviderError with
// transport() == true. Non-2xx statuses are returned, not thrown.
class HttpClient {
public:
    virtual ~HttpClient() = default;
    virtual HttpResponse send(const HttpRequest& request) = 0;
};

class LiveHttpClient final : public HttpClient {
public:
    HttpResponse send(const HttpRequest& request) override;
};

// Serves canned responses keyed by exact URL. Unknown URLs behave like a
// connection failure. Thread-safe.
class FixtureHttpClient final : public HttpClient {
public:
    struct Route {
        int status = 200;
        std::string body;
        std::string content_type = "text/html; charset=utf-8";
    };

    FixtureHttpClient() = default;

    // Manifest format: {"<url>": {"status": 200, "file": "page.html"} | {"body": "..."}}.
    // Relative file paths resolve against the manifest's directory.
    static std::shared_ptr<FixtureHttpClient> from_manifest(const std::filesystem::path& path);

    void add(std::string url, Route route);
    HttpResponse send(const HttpRequest& request) override;

    std::vector<std::string> requested_urls() const;

private:
    mutable std::mutex mu_;
    std::map<std::string, Route> routes_;
    std::vector<std::string> requested_;
};

// Process-wide switch consulted by LiveHttpClient before every connection.
void set_live_network_allowed(bool allowed) noexcept;
bool live_network_allowed() noexcept;
// Every live connection attempt, allowed or refused, since process start.
std::size_t live_connection_attempts() noexcept;

// Closes the network for its lifetime.
class NoNetworkGuard {
public:
    NoNetworkGuard() : previous_(live_network_allowed()) { set_live_network_allowed(false); }
    ~NoNetworkGuard() { set_live_network_allowed(previous_); }
    NoNetworkGuard(const NoNetworkGuard&) = delete;
    NoNetworkGuard& operator=(const NoNetworkGuard&) = delete;

private:
    bool previous_;
};

struct ParsedUrl {
    std::string scheme;  // "http" or "https"
    std::string host;
    int port = 0;
    std::string path_and_query;  // always starts with '/'
};

std::optional<ParsedUrl> parse_http_url(std::string_view url);
bool is_http_url(std::string_view url);

std::string url_encode(std::string_view s);

// Appends `key=value` pairs (percent-encoded) to `base`.
std::string with_query(std::string base,
                       const std::vector<std::pair<std::string, std::string>>& params);

}  // namespace manicheck::net
