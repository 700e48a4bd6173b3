#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hatepol {

enum class TokenKind { word, hashtag, mention, url, email, emoticon, number, punctuation, other };

std::string_view to_string(TokenKind kind);

struct Token {
  std::string surface;
  // Lowercased surface.
  std::string normalized;
  TokenKind kind = TokenKind::other;
  // Byte offset of the surface in the source text.
  std::size_t offset = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

// URLs, emails, mentions, hashtags and emoticons are recognized before the
// text is split at whitespace and punctuation.
std::vector<Token> tokenize(std::string_view text);

enum class Polarity { positive, negative };

using PolarityTable = std::map<std::string, Polarity, std::less<>>;

// Tables compiled in from data/emoticons.tsv and data/emoji.tsv.
const PolarityTable& emoticon_polarity();
const PolarityTable& emoji_polarity();

// "surface<TAB>positive|negative" per line; '#' starts a comment line.
PolarityTable parse_polarity_table(std::string_view tsv);

// Emoji token surface with variation selectors and skin tones removed.
std::string emoji_base(std::string_view surface);

}  // namespace hatepol
