#include "hatepol/tokenize.hpp"

#include <sstream>

#include "hatepol/text.hpp"

namespace hatepol {

namespace detail {
extern const std::string_view emoticon_table_tsv;
extern const std::string_view emoji_table_tsv;
}  // namespace detail

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::word: return "word";
    case TokenKind::hashtag: return "hashtag";
    case TokenKind::mention: return "mention";
    case TokenKind::url: return "url";
    case TokenKind::email: return "email";
    case TokenKind::emoticon: return "emoticon";
    case TokenKind::number: return "number";
    case TokenKind::punctuation: return "punctuation";
    case TokenKind::other: return "other";
  }
  return "other";
}

PolarityTable parse_polarity_table(std::string_view tsv) {
  PolarityTable table;
  std::istringstream in{std::string(tsv)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    auto value = text::trim(std::string_view(line).substr(tab + 1));
    if (value == "positive") table.emplace(line.substr(0, tab), Polarity::positive);
    if (value == "negative") table.emplace(line.substr(0, tab), Polarity::negative);
  }
  return table;
}

const PolarityTable& emoticon_polarity() {
  static const PolarityTable table = parse_polarity_table(detail::emoticon_table_tsv);
  return table;
}

const PolarityTable& emoji_polarity() {
  static const PolarityTable table = parse_polarity_table(detail::emoji_table_tsv);
  return table;
}

std::string emoji_base(std::string_view surface) {
  std::string out;
  for (std::size_t i = 0, len = 0; i < surface.size(); i += len) {
    const char32_t cp = text::decode(surface, i, len);
    if (cp == 0x200D) break;
    if (!text::is_emoji_modifier(cp)) text::append_utf8(out, cp);
  }
  return out;
}

namespace {

bool ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool word_char(char32_t cp) { return text::is_letter(cp) || text::is_digit(cp) || cp == '_'; }

bool is_punctuation(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) || (cp >= 0x5B && cp <= 0x60) ||
           (cp >= 0x7B && cp <= 0x7E);
  }
  return cp == 0xA1 || cp == 0xAB || cp == 0xBB || cp == 0xBF || (cp >= 0x2010 && cp <= 0x205E) ||
         cp == 0x2212;
}

class Scanner {
 public:
  explicit Scanner(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    while (pos_ < s_.size()) {
      std::size_t len = 0;
      const char32_t cp = text::decode(s_, pos_, len);
      if (text::is_space(cp)) {
        pos_ += len;
        continue;
      }
      if (url() || email() || prefixed('@', TokenKind::mention) || prefixed('#', TokenKind::hashtag) ||
          emoticon() || number(cp) || word(cp) || emoji(cp)) {
        continue;
      }
      emit(len, is_punctuation(cp) ? TokenKind::punctuation : TokenKind::other);
    }
    return std::move(out_);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<Token> out_;

  void emit(std::size_t len, TokenKind kind) {
    Token t;
    t.surface = std::string(s_.substr(pos_, len));
    t.normalized = text::to_lower(t.surface);
    t.kind = kind;
    t.offset = pos_;
    out_.push_back(std::move(t));
    pos_ += len;
  }

  // Byte length of the run of word characters starting at `from`.
  std::size_t word_run(std::size_t from) const {
    std::size_t end = from, len = 0;
    while (end < s_.size() && word_char(text::decode(s_, end, len))) end += len;
    return end - from;
  }

  bool url() {
    const auto rest = s_.substr(pos_);
    if (!text::starts_with_icase(rest, "http://") && !text::starts_with_icase(rest, "https://") &&
        !text::starts_with_icase(rest, "www."))
      return false;
    std::size_t end = pos_, len = 0;
    while (end < s_.size() && !text::is_space(text::decode(s_, end, len))) end += len;
    while (end > pos_ && std::string_view(".,;:!?)\"'").find(s_[end - 1]) != std::string_view::npos) --end;
    const std::size_t scheme = rest[0] == 'w' || rest[0] == 'W' ? 4 : (rest[4] == ':' ? 7 : 8);
    if (end - pos_ <= scheme) return false;
    emit(end - pos_, TokenKind::url);
    return true;
  }

  bool email() {
    auto local_char = [](char c) { return ascii_alnum(c) || c == '.' || c == '_' || c == '%' || c == '+' || c == '-'; };
    std::size_t i = pos_;
    while (i < s_.size() && local_char(s_[i])) ++i;
    if (i == pos_ || i >= s_.size() || s_[i] != '@') return false;
    ++i;
    std::size_t labels = 0, end = i;
    while (true) {
      std::size_t j = end;
      while (j < s_.size() && (ascii_alnum(s_[j]) || s_[j] == '-')) ++j;
      if (j == end) break;
      ++labels;
      end = j;
      if (end + 1 < s_.size() && s_[end] == '.' && (ascii_alnum(s_[end + 1]))) {
        ++end;
        continue;
      }
      break;
    }
    if (labels < 2) return false;
    emit(end - pos_, TokenKind::email);
    return true;
  }

  bool prefixed(char sigil, TokenKind kind) {
    if (s_[pos_] != sigil) return false;
    const auto run = word_run(pos_ + 1);
    if (run == 0) return false;
    emit(run + 1, kind);
    return true;
  }

  bool emoticon() {
    std::size_t best = 0;
    const auto& table = emoticon_polarity();
    for (const auto& [surface, polarity] : table) {
      if (surface.size() <= best || s_.compare(pos_, surface.size(), surface) != 0) continue;
      const std::size_t end = pos_ + surface.size();
      if (end < s_.size()) {
        std::size_t len = 0;
        const char32_t next = text::decode(s_, end, len);
        if (word_char(next)) continue;
      }
      best = surface.size();
    }
    if (best == 0) return false;
    emit(best, TokenKind::emoticon);
    return true;
  }

  bool number(char32_t cp) {
    if (!text::is_digit(cp)) return false;
    std::size_t end = pos_;
    while (end < s_.size() && text::is_digit(static_cast<unsigned char>(s_[end]))) ++end;
    while (end + 1 < s_.size() && (s_[end] == '.' || s_[end] == ',') &&
           text::is_digit(static_cast<unsigned char>(s_[end + 1]))) {
      ++end;
      while (end < s_.size() && text::is_digit(static_cast<unsigned char>(s_[end]))) ++end;
    }
    emit(end - pos_, TokenKind::number);
    return true;
  }

  bool word(char32_t cp) {
    if (!text::is_letter(cp)) return false;
    emit(word_run(pos_), TokenKind::word);
    return true;
  }

  bool emoji(char32_t cp) {
    if (!text::is_emoji(cp)) return false;
    std::size_t len = 0;
    text::decode(s_, pos_, len);
    std::size_t end = pos_ + len;
    while (end < s_.size()) {
      const char32_t next = text::decode(s_, end, len);
      if (next == 0x200D) {
        std::size_t len2 = 0;
        if (end + len < s_.size() && text::is_emoji(text::decode(s_, end + len, len2))) {
          end += len + len2;
          continue;
        }
        break;
      }
      if (!text::is_emoji_modifier(next)) break;
      end += len;
    }
    emit(end - pos_, TokenKind::other);
    return true;
  }
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return Scanner(text).run(); }

}  // namespace hatepol
