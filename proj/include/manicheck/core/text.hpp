#pragma once

// String helpers shared by every module. All strings are UTF-8.

#include <string>
#include <string_view>
#include <vector>

namespace manicheck::text {

bool is_space(char c) noexcept;

std::string trim(std::string_view s);
std::string_view trim_view(std::string_view s);

// Replaces every run of whitespace with a single space and trims the ends.
std::string collapse_whitespace(std::string_view s);

std::vector<std::string> split_words(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string ascii_lower(std::string_view s);
bool iequals_ascii(std::string_view a, std::string_view b);

bool starts_with_ci(std::string_view s, std::string_view prefix);

// Unicode canonical composition (NFC). Invalid UTF-8 sequences become U+FFFD.
std::string nfc(std::string_view s);

// Full Unicode lower-casing (locale-independent root rules).
std::string unicode_lower(std::string_view s);

// Case-insensitive comparison after trimming and Unicode lower-casing.
bool same_text_ci(std::string_view a, std::string_view b);

// Code point conversions. Length and offsets in the splitter and context
// budget are measured in code points, not bytes.
std::u32string to_utf32(std::string_view s);
std::string to_utf8(std::u32string_view s);
std::size_t codepoint_length(std::string_view s);

// True when `needle` occurs in `haystack` at a position where a leading or
// trailing digit of the needle is not glued to another digit, so "150" is not
// found inside "1500". Non-digit edges match as plain substrings.
bool contains_fragment(std::string_view haystack, std::string_view needle);

// Byte offsets of every fragment match (same digit-boundary rule).
std::vector<std::size_t> fragment_positions(std::string_view haystack, std::string_view needle);

// Number of non-overlapping occurrences of `needle` in `haystack`.
std::size_t count_occurrences(std::string_view haystack, std::string_view needle);

}  // namespace manicheck::text
