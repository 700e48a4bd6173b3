#include "hatepol/stylometry.hpp"

#include <set>
#include <string>
#include <utility>

#include "hatepol/text.hpp"

namespace hatepol {

const std::array<std::string_view, kStylometricCount>& stylometric_names() {
  static constexpr std::array<std::string_view, kStylometricCount> names = {
      "lowercase_char_ratio",     "uppercase_char_ratio",    "initial_uppercase_word_ratio",
      "punctuation_to_word_ratio", "ending_punctuation_ratio", "non_ending_punctuation_ratio",
      "exclamation_ratio",        "question_ratio",          "digit_char_ratio",
      "operator_char_ratio",      "url_token_ratio",         "hashtag_token_ratio",
      "mention_token_ratio",      "email_token_ratio",       "parenthesis_char_ratio",
      "positive_emoticon_ratio",  "negative_emoticon_ratio", "positive_emoji_ratio",
      "negative_emoji_ratio",     "repeated_bigram_ratio",   "word_count",
      "mean_word_length"};
  return names;
}

namespace {

double ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

bool is_operator(char32_t cp) {
  switch (cp) {
    case '+': case '-': case '*': case '/': case '=': case '<': case '>':
    case '%': case '&': case '|': case '^': case '~': case 0x2212:
      return true;
    default:
      return false;
  }
}

bool is_parenthesis(char32_t cp) {
  return cp == '(' || cp == ')' || cp == '[' || cp == ']' || cp == '{' || cp == '}';
}

}  // namespace

std::array<double, kStylometricCount> stylometric_features(std::string_view s) {
  const auto tokens = tokenize(s);
  return stylometric_features(s, tokens);
}

std::array<double, kStylometricCount> stylometric_features(std::string_view s, std::span<const Token> tokens) {
  std::array<double, kStylometricCount> f{};
  if (s.empty()) return f;

  double chars = 0, letters = 0, upper = 0, lower = 0, digits = 0, operators = 0, parens = 0;
  double exclaim = 0, question = 0;
  for (std::size_t i = 0, len = 0; i < s.size(); i += len) {
    const char32_t cp = text::decode(s, i, len);
    ++chars;
    if (text::is_letter(cp)) {
      ++letters;
      upper += text::is_upper(cp);
      lower += text::is_lower(cp);
    }
    digits += text::is_digit(cp);
    operators += is_operator(cp);
    parens += is_parenthesis(cp);
    exclaim += (cp == '!');
    question += (cp == '?');
  }

  double n_tokens = static_cast<double>(tokens.size());
  double words = 0, initial_upper = 0, punct = 0, ending = 0, non_ending = 0;
  double urls = 0, hashtags = 0, mentions = 0, emails = 0;
  double pos_emoticon = 0, neg_emoticon = 0, pos_emoji = 0, neg_emoji = 0, word_chars = 0;
  std::vector<std::string_view> word_forms;
  for (const auto& t : tokens) {
    switch (t.kind) {
      case TokenKind::word: {
        ++words;
        std::size_t len = 0;
        initial_upper += text::is_upper(text::decode(t.surface, 0, len));
        word_chars += static_cast<double>(text::length(t.surface));
        word_forms.push_back(t.normalized);
        break;
      }
      case TokenKind::punctuation: {
        ++punct;
        const std::size_t end = t.offset + t.surface.size();
        std::size_t len = 0;
        const bool boundary = end >= s.size() || text::is_space(text::decode(s, end, len));
        const bool terminal = t.surface == "." || t.surface == "!" || t.surface == "?";
        if (terminal && boundary) {
          ++ending;
        } else {
          ++non_ending;
        }
        break;
      }
      case TokenKind::url: ++urls; break;
      case TokenKind::hashtag: ++hashtags; break;
      case TokenKind::mention: ++mentions; break;
      case TokenKind::email: ++emails; break;
      case TokenKind::emoticon: {
        auto it = emoticon_polarity().find(t.surface);
        if (it != emoticon_polarity().end()) {
          (it->second == Polarity::positive ? pos_emoticon : neg_emoticon) += 1;
        }
        break;
      }
      case TokenKind::other: {
        auto it = emoji_polarity().find(emoji_base(t.surface));
        if (it != emoji_polarity().end()) (it->second == Polarity::positive ? pos_emoji : neg_emoji) += 1;
        break;
      }
      case TokenKind::number: break;
    }
  }

  double repeated = 0;
  if (word_forms.size() >= 2) {
    std::set<std::pair<std::string_view, std::string_view>> distinct;
    for (std::size_t i = 0; i + 1 < word_forms.size(); ++i) distinct.emplace(word_forms[i], word_forms[i + 1]);
    const double total = static_cast<double>(word_forms.size() - 1);
    repeated = 1.0 - static_cast<double>(distinct.size()) / total;
  }

  f = {ratio(lower, letters),
       ratio(upper, letters),
       ratio(initial_upper, words),
       ratio(punct, punct + words),
       ratio(ending, chars),
       ratio(non_ending, chars),
       ratio(exclaim, chars),
       ratio(question, chars),
       ratio(digits, chars),
       ratio(operators, chars),
       ratio(urls, n_tokens),
       ratio(hashtags, n_tokens),
       ratio(mentions, n_tokens),
       ratio(emails, n_tokens),
       ratio(parens, chars),
       ratio(pos_emoticon, n_tokens),
       ratio(neg_emoticon, n_tokens),
       ratio(pos_emoji, n_tokens),
       ratio(neg_emoji, n_tokens),
       repeated,
       words,
       ratio(word_chars, words)};
  return f;
}

}  // namespace hatepol
