#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bitext::utf8 {

/// Decodes the code point starting at byte `i` and advances `i` past it.
char32_t next(std::string_view text, std::size_t& i);

/// Decodes UTF-8 into code points. Invalid bytes decode to U+FFFD.
std::u32string decode(std::string_view text);

void append(std::string& out, char32_t cp);
std::string encode(std::u32string_view cps);

/// Number of code points in `text`.
std::size_t length(std::string_view text);

// Character classes. These cover the scripts that occur in English/Chinese
// medical text; they are not a full Unicode database.
bool is_space(char32_t cp);
bool is_ascii_digit(char32_t cp);
bool is_digit(char32_t cp);  // ASCII, full-width and superscript digits
bool is_superscript_digit(char32_t cp);
bool is_cjk(char32_t cp);    // ideographs and kana
bool is_fullwidth_punct(char32_t cp);
bool is_punct(char32_t cp);
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);
bool is_letter(char32_t cp);

char32_t to_lower(char32_t cp);

std::string to_lower(std::string_view text);

/// Strips leading and trailing Unicode whitespace.
std::string_view trim(std::string_view text);

}  // namespace bitext::utf8
