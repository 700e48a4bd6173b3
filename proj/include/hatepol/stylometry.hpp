#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include "hatepol/tokenize.hpp"

namespace hatepol {

inline constexpr std::size_t kStylometricCount = 22;

// Column order of stylometric_features().
const std::array<std::string_view, kStylometricCount>& stylometric_names();

// Language-independent surface statistics of one text.
//  - lowercase/uppercase ratios are over letters;
//  - other *_char_ratio columns and the ending/non-ending punctuation,
//    exclamation and question ratios are over code points;
//  - *_token_ratio and emoticon/emoji ratios are over tokens;
//  - punctuation_to_word_ratio is punctuation / (punctuation + words);
//  - repeated_bigram_ratio is 1 - distinct/total over lowercased word bigrams;
//  - word_count and mean_word_length (code points) are raw.
// Empty text yields all zeros.
std::array<double, kStylometricCount> stylometric_features(std::string_view text);
std::array<double, kStylometricCount> stylometric_features(std::string_view text, std::span<const Token> tokens);

}  // namespace hatepol
