#pragma once

// Domain types shared by retrieval, context building, inference, dataset
// generation and evaluation.

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace manicheck {

enum class Veracity { True, False };

// Original claims are true news; negations and context alterations are the
// two families of manipulated (false) content derived from them.
enum class ClaimKind { Original, Negation, ContextAltered };

enum class VerdictLabel { True, False, NonConclusive };

std::string_view to_string(Veracity v) noexcept;
std::string_view to_string(ClaimKind k) noexcept;
std::string_view to_string(VerdictLabel l) noexcept;

Veracity parse_veracity(std::string_view s);
ClaimKind parse_claim_kind(std::string_view s);
VerdictLabel parse_verdict_label(std::string_view s);

// Ground-truth label implied by the kind.
Veracity expected_label(ClaimKind kind) noexcept;

// ISO 8601 calendar date without time zone.
class CalendarDate {
public:
    CalendarDate() = default;
    explicit CalendarDate(std::chrono::year_month_day ymd);

    // Throws InvalidArgument unless `s` is a valid YYYY-MM-DD date.
    static CalendarDate parse(std::string_view s);
    static std::optional<CalendarDate> try_parse(std::string_view s);
    static CalendarDate today_utc();

    std::string str() const;
    std::chrono::year_month_day ymd() const noexcept { return ymd_; }

    friend bool operator==(const CalendarDate&, const CalendarDate&) = default;
    friend auto operator<=>(const CalendarDate& a, const CalendarDate& b) {
        return a.ymd_ <=> b.ymd_;
    }

private:
    std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::month{1},
                                     std::chrono::day{1}};
};

struct ManipulationSpan {
    std::string original;     // ground-truth context item
    std::string replacement;  // altered item as it appears in the headline

    friend bool operator==(const ManipulationSpan&, const ManipulationSpan&) = default;
};

struct ClaimRecord {
    std::string id;
    std::string headline;
    ClaimKind kind = ClaimKind::Original;
    Veracity label = Veracity::True;
    std::string provider;
    std::string region;
    CalendarDate published_date;
    std::optional<std::string> origin_id;
    std::optional<ManipulationSpan> manipulation;

    friend bool operator==(const ClaimRecord&, const ClaimRecord&) = default;
};

// A crawled web page reduced to plain text.
struct Document {
    std::string url;
    int rank = 1;  // position in the search result list
    std::string title;
    std::string text;
    std::string fetched_at;  // ISO 8601 UTC timestamp

    friend bool operator==(const Document&, const Document&) = default;
};

struct Chunk {
    std::size_t doc_index = 0;
    std::size_t seq = 0;
    std::string text;
    std::size_t char_start = 0;  // code point offset into the document text

    friend bool operator==(const Chunk&, const Chunk&) = default;
};

using Vector = std::vector<double>;

struct EmbeddedChunk {
    Chunk chunk;
    Vector vector;
};

struct Verdict {
    VerdictLabel label = VerdictLabel::NonConclusive;
    std::string explanation;
    std::string raw;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct SourceRef {
    std::string url;
    int rank = 0;

    friend bool operator==(const SourceRef&, const SourceRef&) = default;
};

struct StageTiming {
    double retrieval_seconds = 0.0;      // search + crawl
    double context_build_seconds = 0.0; // chunk, embed, index, retrieve
    double inference_seconds = 0.0;
};

struct Prediction {
    std::string claim;
    std::string mode;                   // "retrieval", "ablation" or "evidence"
    std::optional<std::string> region;  // passed to search as the locale
    std::optional<CalendarDate> date;   // recorded for reporting only
    std::vector<Verdict> runs;
    VerdictLabel majority = VerdictLabel::NonConclusive;
    std::vector<SourceRef> context_digest;
    std::vector<std::string> warnings;
    StageTiming elapsed;
};

// Label held by a strict majority of `labels`, NonConclusive otherwise.
// NonConclusive is itself a votable label.
VerdictLabel majority_label(const std::vector<VerdictLabel>& labels);

// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp_now();

}  // namespace manicheck
