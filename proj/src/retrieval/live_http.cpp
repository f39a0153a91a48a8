#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "manicheck/core/errors.hpp"
#include "manicheck/retrieval/http.hpp"

#include <cmath>

namespace manicheck::net {
namespace detail {
void note_live_attempt();
}

HttpResponse LiveHttpClient::send(const HttpRequest& request) {
    auto url = parse_http_url(request.url);
    if (!url) throw ProviderError("http", "invalid URL: " + request.url, false);
    detail::note_live_attempt();

    httplib::Client client(url->scheme + "://" + url->host + ":" + std::to_string(url->port));
    auto secs = static_cast<time_t>(request.timeout_seconds);
    auto usecs = static_cast<time_t>((request.timeout_seconds - std::floor(request.timeout_seconds)) * 1e6);
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    client.set_follow_location(true);

    httplib::Headers headers;
    for (const auto& [k, v] : request.headers) headers.emplace(k, v);

    HttpResponse out;
    if (request.method == "GET") {
        auto result = client.Get(
            url->path_and_query, headers,
            [&](const httplib::Response& r) {
                out.status = r.status;
                out.content_type = r.get_header_value("Content-Type");
                return true;
            },
            [&](const char* data, std::size_t len) {
                if (out.body.size() + len > request.max_bytes) {
                    out.truncated = true;
                    return false;
                }
                out.body.append(data, len);
                return true;
            });
        if (!result && !out.truncated) {
            throw ProviderError("http", httplib::to_string(result.error()) + " for " + request.url);
        }
        return out;
    }
    if (request.method == "POST") {
        auto result = client.Post(url->path_and_query, headers, request.body,
                                  request.content_type.empty() ? "application/json"
                                                               : request.content_type);
        if (!result) {
            throw ProviderError("http", httplib::to_string(result.error()) + " for " + request.url);
        }
        out.status = result->status;
        out.content_type = result->get_header_value("Content-Type");
        out.body = result->body;
        if (out.body.size() > request.max_bytes) {
            out.body.resize(request.max_bytes);
            out.truncated = true;
        }
        return out;
    }
    throw ProviderError("http", "unsupported method " + request.method, false);
}

}  // namespace manicheck::net
