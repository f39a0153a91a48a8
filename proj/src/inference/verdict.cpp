#include "manicheck/inference/verdict.hpp"

#include "manicheck/core/text.hpp"

namespace manicheck::inference {
namespace {

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

// Stripped from the end of the explanation once the token is removed.
// Sentence punctuation stays so the explanation still reads naturally.
bool is_explanation_separator(char c) {
    return text::is_space(c) || c == '*' || c == '`' || c == '"' || c == '\'' || c == ':' ||
           c == ';' || c == ',' || c == '-' || c == '_' || c == '#';
}

}  // namespace

bool is_trailing_noise(char c) noexcept {
    switch (c) {
        case '.': case ',': case '!': case '?': case ':': case ';':
        case '"': case '\'': case '*': case '`':
            return true;
        default:
            return text::is_space(c);
    }
}

std::optional<Decision> read_decision(std::string_view raw, std::string_view positive,
                                      std::string_view negative) {
    std::size_t end = raw.size();
    while (end > 0 && is_trailing_noise(raw[end - 1])) --end;
    std::size_t start = end;
    while (start > 0 && is_ascii_alpha(raw[start - 1])) --start;
    if (start == end) return std::nullopt;
    std::string_view token = raw.substr(start, end - start);
    if (!text::iequals_ascii(token, positive) && !text::iequals_ascii(token, negative)) {
        return std::nullopt;
    }
    std::size_t expl_end = start;
    while (expl_end > 0 && is_explanation_separator(raw[expl_end - 1])) --expl_end;
    std::size_t expl_begin = 0;
    while (expl_begin < expl_end && text::is_space(raw[expl_begin])) ++expl_begin;
    return Decision{std::string(token), std::string(raw.substr(expl_begin, expl_end - expl_begin))};
}

Verdict parse_verdict(std::string_view raw) {
    Verdict v;
    v.raw = std::string(raw);
    if (auto d = read_decision(raw, "true", "false")) {
        v.label = text::iequals_ascii(d->token, "true") ? VerdictLabel::True : VerdictLabel::False;
        v.explanation = std::move(d->explanation);
    } else {
        v.label = VerdictLabel::NonConclusive;
        v.explanation = std::string(raw);
    }
    return v;
}

}  // namespace manicheck::inference
