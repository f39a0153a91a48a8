#include "manicheck/core/model.hpp"

#include "manicheck/core/errors.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <ctime>

namespace manicheck {

std::string_view to_string(Veracity v) noexcept { return v == Veracity::True ? "true" : "false"; }

std::string_view to_string(ClaimKind k) noexcept {
    switch (k) {
        case ClaimKind::Original: return "original";
        case ClaimKind::Negation: return "negation";
        case ClaimKind::ContextAltered: return "context_altered";
    }
    return "original";
}

std::string_view to_string(VerdictLabel l) noexcept {
    switch (l) {
        case VerdictLabel::True: return "true";
        case VerdictLabel::False: return "false";
        case VerdictLabel::NonConclusive: return "non_conclusive";
    }
    return "non_conclusive";
}

Veracity parse_veracity(std::string_view s) {
    if (s == "true") return Veracity::True;
    if (s == "false") return Veracity::False;
    throw FormatError("invalid veracity \"" + std::string(s) + "\" (expected true|false)");
}

ClaimKind parse_claim_kind(std::string_view s) {
    if (s == "original") return ClaimKind::Original;
    if (s == "negation") return ClaimKind::Negation;
    if (s == "context_altered") return ClaimKind::ContextAltered;
    throw FormatError("invalid claim kind \"" + std::string(s) + "\"");
}

VerdictLabel parse_verdict_label(std::string_view s) {
    if (s == "true") return VerdictLabel::True;
    if (s == "false") return VerdictLabel::False;
    if (s == "non_conclusive") return VerdictLabel::NonConclusive;
    throw FormatError("invalid verdict label \"" + std::string(s) + "\"");
}

Veracity expected_label(ClaimKind kind) noexcept {
    return kind == ClaimKind::Original ? Veracity::True : Veracity::False;
}

CalendarDate::CalendarDate(std::chrono::year_month_day ymd) : ymd_(ymd) {
    if (!ymd_.ok()) throw InvalidArgument("invalid calendar date");
}

std::optional<CalendarDate> CalendarDate::try_parse(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    auto num = [&](std::size_t off, std::size_t len, auto& out) {
        auto [p, ec] = std::from_chars(s.data() + off, s.data() + off + len, out);
        return ec == std::errc{} && p == s.data() + off + len;
    };
    if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                    std::chrono::day{d}};
    if (!ymd.ok()) return std::nullopt;
    return CalendarDate(ymd);
}

CalendarDate CalendarDate::parse(std::string_view s) {
    auto d = try_parse(s);
    if (!d) throw InvalidArgument("invalid ISO date \"" + std::string(s) + "\"");
    return *d;
}

CalendarDate CalendarDate::today_utc() {
    auto days = std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now());
    return CalendarDate(std::chrono::year_month_day{days});
}

std::string CalendarDate::str() const {
    std::array<char, 16> buf{};
    std::snprintf(buf.data(), buf.size(), "%04d-%02u-%02u", static_cast<int>(ymd_.year()),
                  static_cast<unsigned>(ymd_.month()), static_cast<unsigned>(ymd_.day()));
    return buf.data();
}

VerdictLabel majority_label(const std::vector<VerdictLabel>& labels) {
    std::array<std::size_t, 3> counts{};
    for (auto l : labels) ++counts[static_cast<std::size_t>(l)];
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] * 2 > labels.size()) return static_cast<VerdictLabel>(i);
    }
    return VerdictLabel::NonConclusive;
}

std::string utc_timestamp_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::array<char, 32> buf{};
    std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf.data();
}

}  // namespace manicheck
