#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers. Case mapping covers ASCII and the Latin-1/Latin Extended-A
// blocks, which is what Italian text needs.
namespace hatepol::text {

// Decodes one code point at `pos`, setting `len` to its byte length.
// Invalid bytes decode as themselves with length 1.
char32_t decode(std::string_view s, std::size_t pos, std::size_t& len);

void append_utf8(std::string& out, char32_t cp);

std::vector<char32_t> code_points(std::string_view s);
std::size_t length(std::string_view s);

bool is_letter(char32_t cp);
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);
bool is_emoji(char32_t cp);
// Variation selectors, skin-tone modifiers and the zero-width joiner.
bool is_emoji_modifier(char32_t cp);

char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view s);

std::string trim(std::string_view s);
// Lowercases and collapses whitespace runs into single spaces.
std::string normalize_whitespace_lower(std::string_view s);

bool starts_with_icase(std::string_view s, std::string_view prefix);

}  // namespace hatepol::text
