#include "manicheck/retrieval/http.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/json_io.hpp"
#include "manicheck/core/text.hpp"

#include <cctype>
#include <charconv>

namespace manicheck::net {
namespace {

std::atomic<bool> g_network_allowed{true};
std::atomic<std::size_t> g_live_attempts{0};

}  // namespace

void set_live_network_allowed(bool allowed) noexcept { g_network_allowed.store(allowed); }
bool live_network_allowed() noexcept { return g_network_allowed.load(); }
std::size_t live_connection_attempts() noexcept { return g_live_attempts.load(); }

namespace detail {
// Called by LiveHttpClient before opening a connection.
void note_live_attempt() {
    g_live_attempts.fetch_add(1);
    if (!g_network_allowed.load()) {
        throw NetworkDisabledError("live network access is disabled");
    }
}
}  // namespace detail

std::optional<ParsedUrl> parse_http_url(std::string_view url) {
    ParsedUrl out;
    std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) return std::nullopt;
    out.scheme = text::ascii_lower(url.substr(0, scheme_end));
    if (out.scheme != "http" && out.scheme != "https") return std::nullopt;
    std::string_view rest = url.substr(scheme_end + 3);
    for (char c : url) {
        if (text::is_space(c) || static_cast<unsigned char>(c) < 0x20) return std::nullopt;
    }
    std::size_t path_start = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, path_start);
    if (auto at = authority.rfind('@'); at != std::string_view::npos) {
        authority = authority.substr(at + 1);
    }
    if (authority.empty()) return std::nullopt;
    out.port = out.scheme == "https" ? 443 : 80;
    std::size_t colon = authority.rfind(':');
    if (colon != std::string_view::npos && authority.find(']') == std::string_view::npos) {
        std::string_view port = authority.substr(colon + 1);
        int p = 0;
        auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), p);
        if (ec != std::errc{} || ptr != port.data() + port.size() || p <= 0 || p > 65535) {
            return std::nullopt;
        }
        out.port = p;
        authority = authority.substr(0, colon);
    }
    if (authority.empty()) return std::nullopt;
    out.host = std::string(authority);
    if (path_start == std::string_view::npos) {
        out.path_and_query = "/";
    } else {
        std::string_view tail = rest.substr(path_start);
        if (auto hash = tail.find('#'); hash != std::string_view::npos) tail = tail.substr(0, hash);
        out.path_and_query = tail.empty() || tail.front() != '/' ? "/" + std::string(tail)
                                                                  : std::string(tail);
    }
    return out;
}

bool is_http_url(std::string_view url) { return parse_http_url(url).has_value(); }

std::string url_encode(std::string_view s) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(kHex[c >> 4]);
            out.push_back(kHex[c & 0x0F]);
        }
    }
    return out;
}

std::string with_query(std::string base,
                       const std::vector<std::pair<std::string, std::string>>& params) {
    char sep = base.find('?') == std::string::npos ? '?' : '&';
    for (const auto& [k, v] : params) {
        base.push_back(sep);
        base += url_encode(k);
        base.push_back('=');
        base += url_encode(v);
        sep = '&';
    }
    return base;
}

std::shared_ptr<FixtureHttpClient> FixtureHttpClient::from_manifest(
    const std::filesystem::path& path) {
    Json manifest = read_json_file(path);
    if (!manifest.is_object()) throw FormatError(path.string() + ": manifest must be an object");
    auto client = std::make_shared<FixtureHttpClient>();
    for (const auto& [url, entry] : manifest.items()) {
        Route route;
        route.status = entry.value("status", 200);
        route.content_type = entry.value("content_type", route.content_type);
        if (auto f = entry.find("file"); f != entry.end()) {
            route.body = read_file(path.parent_path() / f->get<std::string>());
        } else {
            route.body = entry.value("body", std::string{});
        }
        client->add(url, std::move(route));
    }
    return client;
}

void FixtureHttpClient::add(std::string url, Route route) {
    std::lock_guard lock(mu_);
    routes_[std::move(url)] = std::move(route);
}

HttpResponse FixtureHttpClient::send(const HttpRequest& request) {
    std::lock_guard lock(mu_);
    requested_.push_back(request.url);
    auto it = routes_.find(request.url);
    if (it == routes_.end()) {
        throw ProviderError("http", "no fixture for " + request.url, true);
    }
    HttpResponse resp;
    resp.status = it->second.status;
    resp.content_type = it->second.content_type;
    resp.body = it->second.body;
    if (resp.body.size() > request.max_bytes) {
        resp.body.resize(request.max_bytes);
        resp.truncated = true;
    }
    return resp;
}

std::vector<std::string> FixtureHttpClient::requested_urls() const {
    std::lock_guard lock(mu_);
    return requested_;
}

}  // namespace manicheck::net
