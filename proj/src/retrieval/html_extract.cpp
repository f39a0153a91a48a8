#include "manicheck/retrieval/html_extract.hpp"

#include "manicheck/core/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace manicheck::html {
namespace {

const std::unordered_set<std::string_view>& dropped_elements() {
    static const std::unordered_set<std::string_view> s{
        "script", "style", "noscript", "template", "head", "nav", "header", "footer", "aside"};
    return s;
}

// Elements whose content is raw text: no tags are recognised until the
// matching end tag.
bool is_raw_text(std::string_view name) {
    return name == "script" || name == "style" || name == "title" || name == "textarea" ||
           name == "xmp";
}

const std::unordered_set<std::string_view>& block_elements() {
    static const std::unordered_set<std::string_view> s{
        "address", "article",  "blockquote", "body",    "br",      "caption", "center",
        "dd",      "details",  "dialog",     "div",     "dl",      "dt",      "fieldset",
        "figcaption", "figure", "form",      "h1",      "h2",      "h3",      "h4",
        "h5",      "h6",       "hr",         "html",    "legend",  "li",      "main",
        "ol",      "option",   "p",          "pre",     "section", "summary", "table",
        "tbody",   "tfoot",    "thead",      "tr",      "ul"};
    return s;
}

bool is_cell(std::string_view name) { return name == "td" || name == "th"; }

const std::unordered_map<std::string_view, std::string_view>& named_entities() {
    static const std::unordered_map<std::string_view, std::string_view> m{
        {"amp", "&"},       {"lt", "<"},        {"gt", ">"},        {"quot", "\""},
        {"apos", "'"},      {"nbsp", " "},      {"ndash", "–"}, {"mdash", "—"},
        {"hellip", "…"}, {"lsquo", "‘"}, {"rsquo", "’"}, {"ldquo", "“"},
        {"rdquo", "”"}, {"copy", "©"}, {"reg", "®"},  {"trade", "™"},
        {"deg", "°"},  {"euro", "€"}, {"pound", "£"}, {"middot", "·"},
        {"bull", "•"}, {"laquo", "«"}, {"raquo", "»"}, {"times", "×"},
        {"eacute", "é"}};
    return m;
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':' || c == '_';
}

std::size_t find_ci(std::string_view hay, std::string_view needle, std::size_t from) {
    if (needle.empty()) return from;
    for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
        if (text::iequals_ascii(hay.substr(i, needle.size()), needle)) return i;
    }
    return std::string_view::npos;
}

struct Tag {
    std::string name;  // lower-case
    bool closing = false;
    bool self_closing = false;
    std::size_t end = 0;  // index one past '>'
};

// Parses a tag starting at html[pos] == '<'. Returns false if the '<' does
// not start a tag (it is then literal text).
bool parse_tag(std::string_view html, std::size_t pos, Tag& tag) {
    std::size_t i = pos + 1;
    if (i < html.size() && html[i] == '/') {
        tag.closing = true;
        ++i;
    }
    if (i >= html.size() || !std::isalpha(static_cast<unsigned char>(html[i]))) return false;
    std::size_t name_start = i;
    while (i < html.size() && is_name_char(html[i])) ++i;
    tag.name = text::ascii_lower(html.substr(name_start, i - name_start));
    char quote = 0;
    for (; i < html.size(); ++i) {
        char c = html[i];
        if (quote) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '>') {
            tag.self_closing = i > pos && html[i - 1] == '/';
            tag.end = i + 1;
            return true;
        }
    }
    tag.end = html.size();
    return true;
}

class LineBuilder {
public:
    void text(std::string_view t) { current_ += t; }
    void space() { current_ += ' '; }
    void line_break() {
        flush();
    }
    std::string finish() {
        flush();
        return text::join(lines_, "\n");
    }

private:
    void flush() {
        std::string line = text::collapse_whitespace(decode_entities(current_));
        if (!line.empty()) lines_.push_back(std::move(line));
        current_.clear();
    }

    std::string current_;
    std::vector<std::string> lines_;
};

}  // namespace

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        std::size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out.push_back(s[i++]);
            continue;
        }
        std::string_view ref = s.substr(i + 1, semi - i - 1);
        if (!ref.empty() && ref[0] == '#') {
            int base = 10;
            std::string_view digits = ref.substr(1);
            if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
                base = 16;
                digits = digits.substr(1);
            }
            std::uint32_t cp = 0;
            auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, base);
            if (ec == std::errc{} && p == digits.data() + digits.size() && cp > 0 &&
                cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF)) {
                if (cp == 0xA0) cp = ' ';
                out += text::to_utf8(std::u32string(1, static_cast<char32_t>(cp)));
                i = semi + 1;
                continue;
            }
        } else if (auto it = named_entities().find(ref); it != named_entities().end()) {
            out += it->second;
            i = semi + 1;
            continue;
        }
        out.push_back(s[i++]);
    }
    return out;
}

ExtractedPage extract(std::string_view html) {
    ExtractedPage page;
    LineBuilder lines;
    std::vector<std::string> dropped_stack;
    bool have_title = false;

    std::size_t i = 0;
    while (i < html.size()) {
        if (html[i] != '<') {
            std::size_t next = html.find('<', i);
            if (next == std::string_view::npos) next = html.size();
            if (dropped_stack.empty()) lines.text(html.substr(i, next - i));
            i = next;
            continue;
        }
        if (html.substr(i, 4) == "<!--") {
            std::size_t end = html.find("-->", i + 4);
            i = end == std::string_view::npos ? html.size() : end + 3;
            continue;
        }
        if (i + 1 < html.size() && (html[i + 1] == '!' || html[i + 1] == '?')) {
            std::size_t end = html.find('>', i);
            i = end == std::string_view::npos ? html.size() : end + 1;
            continue;
        }
        Tag tag;
        if (!parse_tag(html, i, tag)) {
            if (dropped_stack.empty()) lines.text("<");
            ++i;
            continue;
        }
        i = tag.end;

        if (!tag.closing && !tag.self_closing && is_raw_text(tag.name)) {
            std::string close = "</" + tag.name;
            std::size_t end = find_ci(html, close, i);
            std::string_view body = html.substr(i, (end == std::string_view::npos ? html.size() : end) - i);
            if (tag.name == "title" && !have_title) {
                page.title = text::collapse_whitespace(decode_entities(body));
                have_title = true;
            } else if (tag.name == "textarea" || tag.name == "xmp") {
                if (dropped_stack.empty()) lines.text(body);
            }
            if (end == std::string_view::npos) {
                i = html.size();
            } else {
                std::size_t gt = html.find('>', end);
                i = gt == std::string_view::npos ? html.size() : gt + 1;
            }
            continue;
        }

        if (dropped_elements().count(tag.name)) {
            if (tag.closing) {
                auto it = std::find(dropped_stack.rbegin(), dropped_stack.rend(), tag.name);
                if (it != dropped_stack.rend()) {
                    dropped_stack.erase(std::next(it).base(), dropped_stack.end());
                }
            } else if (!tag.self_closing) {
                dropped_stack.push_back(tag.name);
            }
            lines.line_break();
            continue;
        }
        if (!dropped_stack.empty()) continue;
        if (block_elements().count(tag.name)) {
            lines.line_break();
        } else if (is_cell(tag.name)) {
            lines.space();
        }
    }
    page.text = lines.finish();
    return page;
}

std::string strip_tags(std::string_view fragment) {
    std::string t = extract(fragment).text;
    std::replace(t.begin(), t.end(), '\n', ' ');
    return t;
}

std::string normalize_plain_text(std::string_view s) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t nl = s.find('\n', start);
        if (nl == std::string_view::npos) nl = s.size();
        std::string line = text::collapse_whitespace(s.substr(start, nl - start));
        if (!line.empty()) lines.push_back(std::move(line));
        start = nl + 1;
    }
    return text::join(lines, "\n");
}

}  // namespace manicheck::html
