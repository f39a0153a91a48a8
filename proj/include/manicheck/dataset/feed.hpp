#pragma once

#include "manicheck/core/model.hpp"
#include "manicheck/retrieval/http.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace manicheck::dataset {

struct FeedEntry {
    std::string title;
    std::optional<std::string> summary;
    CalendarDate published_date;
    std::string provider;
    std::string region;
    std::optional<std::string> link;

    friend bool operator==(const FeedEntry&, const FeedEntry&) = default;
};

// One entry per RSS 2.0 <item> or Atom <entry>. Titles and
// descriptions/summaries are reduced to plain text. Entries without a usable
// date get `ingestion_date` and a warning; entries with a blank title are
// skipped with a warning. Blank input yields no entries. Malformed XML throws
// FormatError naming the byte offset.
std::vector<FeedEntry> ingest_rss(std::string_view feed_bytes, const std::string& provider,
                                  const std::string& region,
                                  CalendarDate ingestion_date = CalendarDate::today_utc());

// RFC 822 ("Mon, 05 Aug 2024 10:00:00 GMT") or ISO 8601 ("2024-08-05...")
// date as written by the publisher, without time zone conversion.
std::optional<CalendarDate> parse_feed_date(std::string_view s);

// `title`, or `title. summary` when a summary is present. A title that already
// ends in terminal punctuation is not given a second mark.
std::string make_headline(const FeedEntry& entry);

// "BBC News" -> "bbc-news".
std::string slug(std::string_view s);

// Original ClaimRecords with ids `<slug(provider)>-<date>-<seq>` (seq counts
// from 001 per provider and date, in input order). Headlines are NFC
// normalised; a headline repeated (case-insensitively) is dropped with a
// warning.
std::vector<ClaimRecord> originals_from_entries(const std::vector<FeedEntry>& entries);

// Feeds manifest: a JSON array of {"source": url-or-path, "provider", "region"}.
// Relative paths resolve against the manifest's directory.
struct FeedSource {
    std::string source;
    std::string provider;
    std::string region;
};

std::vector<FeedSource> read_feeds_manifest(const std::filesystem::path& path);

// Reads every feed (local file or http(s) URL via `http`) and ingests it.
// A feed that cannot be read throws; the caller decides whether to go on.
std::vector<FeedEntry> ingest_feeds(const std::vector<FeedSource>& sources,
                                    const std::filesystem::path& base_dir, net::HttpClient* http,
                                    CalendarDate ingestion_date = CalendarDate::today_utc());

}  // namespace manicheck::dataset
