#pragma once

#include <string>
#include <string_view>

namespace manicheck::html {

struct ExtractedPage {
    std::string title;
    std::string text;
};

// Visible text of an HTML page.
//
//  * markup, comments and doctype are removed;
//  * script, style, noscript, template, head, nav, header, footer and aside
//    elements are dropped together with their contents;
//  * block-level elements (p, div, li, h1..h6, br, tr, ...) end the current line;
//  * whitespace runs collapse to one space within a line, empty lines are
//    dropped, lines are joined with '\n' and the result is trimmed.
//
// `title` is the collapsed text of the first <title> element.
ExtractedPage extract(std::string_view html);

// Extracted text of an HTML fragment with lines joined by single spaces.
// Used for RSS titles and descriptions.
std::string strip_tags(std::string_view fragment);

// Decodes character references (&amp;, &#8217;, &#x2019;, ...). Unknown named
// references are kept verbatim.
std::string decode_entities(std::string_view s);

// Plain-text bodies: collapse whitespace per line, drop empty lines.
std::string normalize_plain_text(std::string_view s);

}  // namespace manicheck::html
