#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hatepol/tokenize.hpp"

namespace hatepol {

// Word/stem to category map. Stems (entries written with a trailing '*')
// match any word they prefix; an exact entry wins over stems, and among
// stems the longest one wins.
class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(std::string name, std::vector<std::string> categories);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& categories() const noexcept { return categories_; }
  std::size_t entry_count() const noexcept { return exact_.size() + prefix_.size(); }

  // `entry` ending in '*' is a stem. Category indices refer to categories().
  void add(std::string_view entry, std::size_t category);

  // Category indices of the entry matching `word` (already lowercased), or
  // an empty span.
  std::span<const std::size_t> match(std::string_view word) const;

 private:
  std::string name_;
  std::vector<std::string> categories_;
  std::unordered_map<std::string, std::vector<std::size_t>> exact_;
  std::unordered_map<std::string, std::vector<std::size_t>> prefix_;
  std::size_t longest_prefix_ = 0;
};

enum class LexiconFormat { liwc_dic, emolex_tsv };

Lexicon load_lexicon(const std::filesystem::path& path, LexiconFormat format);
Lexicon parse_liwc_dic(std::string_view content, std::string name);
Lexicon parse_emolex_tsv(std::string_view content, std::string name);

// Per category: matched tokens / matchable tokens. Matchable tokens are words
// and hashtag bodies, compared lowercased.
std::vector<double> lexicon_features(std::span<const Token> tokens, const Lexicon& lexicon);

}  // namespace hatepol
