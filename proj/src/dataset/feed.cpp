#include "manicheck/dataset/feed.hpp"

#include "manicheck/core/errors.hpp"
#include "manicheck/core/json_io.hpp"
#include "manicheck/core/log.hpp"
#include "manicheck/core/text.hpp"
#include "manicheck/retrieval/html_extract.hpp"

#include <expat.h>

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <memory>
#include <set>

namespace manicheck::dataset {
namespace {

// Local part of a possibly prefixed element name ("dc:date" -> "date").
std::string_view local_name(const XML_Char* name) {
    std::string_view n(name);
    auto colon = n.rfind(':');
    return colon == std::string_view::npos ? n : n.substr(colon + 1);
}

enum class Field { None, Title, Summary, Date, Link };

struct ParseState {
    std::string provider;
    std::string region;
    CalendarDate ingestion_date;
    std::vector<FeedEntry> entries;

    bool in_entry = false;
    int entry_depth = 0;  // element depth of the open item/entry
    int depth = 0;
    Field field = Field::None;
    int field_depth = 0;
    std::string buffer;

    std::string title, summary, content, date, link;
    bool have_title = false, have_summary = false, have_content = false, have_date = false,
         have_link = false;

    void reset_entry() {
        title.clear(), summary.clear(), content.clear(), date.clear(), link.clear();
        have_title = have_summary = have_content = have_date = have_link = false;
    }
};

bool is_content(std::string_view n) { return n == "content" || n == "encoded"; }

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
    auto* st = static_cast<ParseState*>(data);
    ++st->depth;
    std::string_view n = local_name(name);
    if (!st->in_entry) {
        if (n == "item" || n == "entry") {
            st->in_entry = true;
            st->entry_depth = st->depth;
            st->reset_entry();
        }
        return;
    }
    if (st->field != Field::None) return;  // nested markup inside a field
    if (st->depth != st->entry_depth + 1) return;
    if (n == "title" && !st->have_title) {
        st->field = Field::Title;
    } else if ((n == "description" || n == "summary") && !st->have_summary) {
        st->field = Field::Summary;
    } else if (is_content(n) && !st->have_content) {
        st->field = Field::Summary;
        st->have_content = true;
    } else if ((n == "pubDate" || n == "published" || n == "updated" || n == "date") && !st->have_date) {
        st->field = Field::Date;
    } else if (n == "link" && !st->have_link) {
        // Atom carries the URL in href; RSS in the element text.
        for (const XML_Char** a = attrs; a && *a; a += 2) {
            if (std::string_view(a[0]) == "href") {
                std::string_view rel;
                for (const XML_Char** b = attrs; *b; b += 2) {
                    if (std::string_view(b[0]) == "rel") rel = b[1];
                }
                if (rel.empty() || rel == "alternate") {
                    st->link = a[1];
                    st->have_link = true;
                }
                return;
            }
        }
        st->field = Field::Link;
    } else {
        return;
    }
    st->field_depth = st->depth;
    st->buffer.clear();
}

void XMLCALL on_end(void* data, const XML_Char* name) {
    auto* st = static_cast<ParseState*>(data);
    std::string_view n = local_name(name);
    if (st->field != Field::None && st->depth == st->field_depth) {
        std::string value = std::move(st->buffer);
        st->buffer.clear();
        switch (st->field) {
            case Field::Title:
                st->title = std::move(value);
                st->have_title = true;
                break;
            case Field::Summary:
                if (is_content(n)) {
                    st->content = std::move(value);
                } else {
                    st->summary = std::move(value);
                    st->have_summary = true;
                }
                break;
            case Field::Date:
                // Atom: prefer <published> over <updated>.
                if (n == "updated") {
                    st->date = std::move(value);
                } else {
                    st->date = std::move(value);
                    st->have_date = true;
                }
                break;
            case Field::Link:
                st->link = text::trim(value);
                st->have_link = !st->link.empty();
                break;
            case Field::None:
                break;
        }
        st->field = Field::None;
    } else if (st->in_entry && st->depth == st->entry_depth) {
        st->in_entry = false;
        FeedEntry e;
        e.title = text::collapse_whitespace(html::strip_tags(st->title));
        std::string summary = text::collapse_whitespace(
            html::strip_tags(st->have_summary ? st->summary : st->content));
        if (!summary.empty()) e.summary = std::move(summary);
        e.provider = st->provider;
        e.region = st->region;
        if (!st->link.empty()) e.link = st->link;
        if (e.title.empty()) {
            log::warn("feed " + st->provider + ": skipping entry without a title");
        } else {
            if (auto d = parse_feed_date(st->date)) {
                e.published_date = *d;
            } else {
                e.published_date = st->ingestion_date;
                log::warn("feed " + st->provider + ": entry \"" + e.title +
                          "\" has no usable date; using " + st->ingestion_date.str());
            }
            st->entries.push_back(std::move(e));
        }
    }
    --st->depth;
}

void XMLCALL on_text(void* data, const XML_Char* s, int len) {
    auto* st = static_cast<ParseState*>(data);
    if (st->field != Field::None) st->buffer.append(s, static_cast<std::size_t>(len));
}

std::optional<int> to_int(std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<CalendarDate> make_date(int y, unsigned m, unsigned d) {
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) return std::nullopt;
    return CalendarDate(ymd);
}

}  // namespace

std::optional<CalendarDate> parse_feed_date(std::string_view raw) {
    std::string_view s = text::trim_view(raw);
    if (s.size() >= 10 && s[4] == '-' && s[7] == '-') {
        return CalendarDate::try_parse(s.substr(0, 10));
    }
    // RFC 822: [Day, ] DD Mon YYYY ...
    if (auto comma = s.find(','); comma != std::string_view::npos && comma < 5) s = s.substr(comma + 1);
    auto words = text::split_words(s);
    if (words.size() < 3) return std::nullopt;
    static constexpr std::array<std::string_view, 12> kMonths{"jan", "feb", "mar", "apr", "may", "jun",
                                                               "jul", "aug", "sep", "oct", "nov", "dec"};
    auto day = to_int(words[0]);
    auto year = to_int(words[2]);
    if (!day || !year || words[1].size() < 3) return std::nullopt;
    std::string mon = text::ascii_lower(words[1].substr(0, 3));
    unsigned month = 0;
    for (unsigned i = 0; i < kMonths.size(); ++i) {
        if (kMonths[i] == mon) month = i + 1;
    }
    if (month == 0) return std::nullopt;
    int y = *year;
    if (words[2].size() == 2) y += y < 50 ? 2000 : 1900;
    if (*day < 1) return std::nullopt;
    return make_date(y, month, static_cast<unsigned>(*day));
}

std::vector<FeedEntry> ingest_rss(std::string_view feed_bytes, const std::string& provider,
                                  const std::string& region, CalendarDate ingestion_date) {
    if (text::trim_view(feed_bytes).empty()) return {};
    std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
        XML_ParserCreate("UTF-8"), &XML_ParserFree);
    if (!parser) throw Error("cannot allocate XML parser");
    ParseState st;
    st.provider = provider;
    st.region = region;
    st.ingestion_date = ingestion_date;
    XML_SetUserData(parser.get(), &st);
    XML_SetElementHandler(parser.get(), on_start, on_end);
    XML_SetCharacterDataHandler(parser.get(), on_text);
    if (XML_Parse(parser.get(), feed_bytes.data(), static_cast<int>(feed_bytes.size()), XML_TRUE) ==
        XML_STATUS_ERROR) {
        throw FormatError("feed " + provider + ": XML error at byte " +
                          std::to_string(XML_GetCurrentByteIndex(parser.get())) + ": " +
                          XML_ErrorString(XML_GetErrorCode(parser.get())));
    }
    return std::move(st.entries);
}

std::string make_headline(const FeedEntry& entry) {
    std::string title = text::collapse_whitespace(entry.title);
    std::string summary = entry.summary ? text::collapse_whitespace(*entry.summary) : std::string();
    if (summary.empty()) return title;
    // Collapse a run of repeated full stops at the end of the title ("T.." -> "T.").
    while (title.size() >= 2 && title.back() == '.' && title[title.size() - 2] == '.' &&
           !(title.size() >= 3 && title.compare(title.size() - 3, 3, "...") == 0)) {
        title.pop_back();
    }
    bool terminal = !title.empty() && (title.back() == '.' || title.back() == '!' || title.back() == '?');
    if (!terminal && title.size() >= 3 && title.compare(title.size() - 3, 3, "\xE2\x80\xA6") == 0) {
        terminal = true;  // U+2026
    }
    return title + (terminal ? " " : ". ") + summary;
}

std::string slug(std::string_view s) {
    std::string out;
    bool dash = false;
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u)) {
            if (dash && !out.empty()) out.push_back('-');
            out.push_back(static_cast<char>(std::tolower(u)));
            dash = false;
        } else {
            dash = true;
        }
    }
    return out.empty() ? "source" : out;
}

std::vector<ClaimRecord> originals_from_entries(const std::vector<FeedEntry>& entries) {
    std::vector<ClaimRecord> out;
    std::map<std::string, int> seq;
    std::set<std::string> seen;
    for (const auto& e : entries) {
        std::string headline = text::nfc(make_headline(e));
        if (!seen.insert(text::unicode_lower(headline)).second) {
            log::warn("dropping repeated headline: " + headline);
            continue;
        }
        std::string prefix = slug(e.provider) + "-" + e.published_date.str();
        char num[16];
        std::snprintf(num, sizeof num, "%03d", ++seq[prefix]);
        ClaimRecord r;
        r.id = prefix + "-" + num;
        r.headline = std::move(headline);
        r.kind = ClaimKind::Original;
        r.label = Veracity::True;
        r.provider = e.provider;
        r.region = e.region;
        r.published_date = e.published_date;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<FeedSource> read_feeds_manifest(const std::filesystem::path& path) {
    Json j = read_json_file(path);
    if (!j.is_array()) throw FormatError(path.string() + ": feeds manifest must be a JSON array");
    std::vector<FeedSource> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json& row = j[i];
        auto field = [&](const char* key) {
            if (!row.is_object() || !row.contains(key) || !row[key].is_string()) {
                throw FormatError(path.string() + ": entry " + std::to_string(i) + " needs string \"" +
                                  key + "\"");
            }
            return row[key].get<std::string>();
        };
        out.push_back(FeedSource{field("source"), field("provider"), field("region")});
    }
    return out;
}

std::vector<FeedEntry> ingest_feeds(const std::vector<FeedSource>& sources,
                                    const std::filesystem::path& base_dir, net::HttpClient* http,
                                    CalendarDate ingestion_date) {
    std::vector<FeedEntry> out;
    for (const auto& src : sources) {
        std::string bytes;
        if (net::is_http_url(src.source)) {
            if (!http) throw ConfigError("feed " + src.source + " needs an HTTP client");
            net::HttpRequest req;
            req.url = src.source;
            auto resp = http->send(req);
            if (resp.status < 200 || resp.status >= 300) {
                throw ProviderError("feeds", src.source + ": HTTP " + std::to_string(resp.status));
            }
            bytes = std::move(resp.body);
        } else {
            std::filesystem::path p(src.source);
            if (p.is_relative()) p = base_dir / p;
            bytes = read_file(p);
        }
        auto entries = ingest_rss(bytes, src.provider, src.region, ingestion_date);
        out.insert(out.end(), std::make_move_iterator(entries.begin()), std::make_move_iterator(entries.end()));
    }
    return out;
}

}  // namespace manicheck::dataset
