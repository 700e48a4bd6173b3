#include "hatepol/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "hatepol/error.hpp"
#include "hatepol/text.hpp"

namespace hatepol {

Lexicon::Lexicon(std::string name, std::vector<std::string> categories)
    : name_(std::move(name)), categories_(std::move(categories)) {}

void Lexicon::add(std::string_view entry, std::size_t category) {
  if (category >= categories_.size()) throw Error("category index out of range in lexicon " + name_);
  std::string key = text::to_lower(entry);
  auto* target = &exact_;
  if (!key.empty() && key.back() == '*') {
    key.pop_back();
    target = &prefix_;
    longest_prefix_ = std::max(longest_prefix_, key.size());
  }
  if (key.empty()) throw Error("empty entry in lexicon " + name_);
  auto& cats = (*target)[key];
  if (std::find(cats.begin(), cats.end(), category) == cats.end()) cats.push_back(category);
}

std::span<const std::size_t> Lexicon::match(std::string_view word) const {
  if (auto it = exact_.find(std::string(word)); it != exact_.end()) return it->second;
  if (prefix_.empty()) return {};
  std::string key(word.substr(0, std::min(word.size(), longest_prefix_)));
  while (!key.empty()) {
    if (auto it = prefix_.find(key); it != prefix_.end()) return it->second;
    key.pop_back();
  }
  return {};
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open lexicon " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> fields(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string f;
  while (in >> f) out.push_back(f);
  return out;
}

}  // namespace

Lexicon parse_liwc_dic(std::string_view content, std::string name) {
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t lineno = 0;
  enum { before_header, header, entries } state = before_header;
  std::vector<std::string> categories;
  std::map<std::string, std::size_t> id_to_index;
  std::vector<std::pair<std::string, std::vector<std::size_t>>> pending;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto trimmed = text::trim(line);
    if (trimmed.empty()) continue;
    if (state == before_header) {
      if (trimmed != "%") throw ParseError("LIWC dictionary must start with a '%' line", lineno);
      state = header;
      continue;
    }
    if (state == header) {
      if (trimmed == "%") {
        state = entries;
        continue;
      }
      auto f = fields(trimmed);
      if (f.size() < 2) throw ParseError("category line needs an id and a name", lineno);
      if (id_to_index.contains(f[0])) throw ParseError("duplicate category id " + f[0], lineno);
      id_to_index[f[0]] = categories.size();
      categories.push_back(f[1]);
      continue;
    }
    auto f = fields(trimmed);
    if (f.size() < 2) throw ParseError("entry '" + f[0] + "' lists no category ids", lineno);
    std::vector<std::size_t> cats;
    for (std::size_t i = 1; i < f.size(); ++i) {
      auto it = id_to_index.find(f[i]);
      if (it == id_to_index.end()) throw ParseError("unknown category id " + f[i], lineno);
      cats.push_back(it->second);
    }
    pending.emplace_back(f[0], std::move(cats));
  }
  if (state != entries) throw ParseError("LIWC header is not closed by a '%' line", lineno);
  if (pending.empty()) throw Error("lexicon " + name + " has no entries");
  Lexicon lex(std::move(name), std::move(categories));
  for (const auto& [entry, cats] : pending) {
    for (auto c : cats) lex.add(entry, c);
  }
  return lex;
}

Lexicon parse_emolex_tsv(std::string_view content, std::string name) {
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> categories;
  std::map<std::string, std::size_t> index;
  std::vector<std::pair<std::string, std::size_t>> pending;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      f.push_back(text::trim(std::string_view(line).substr(start, tab - start)));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (f.size() != 3 || f[0].empty() || f[1].empty() || (f[2] != "0" && f[2] != "1"))
      throw ParseError("expected word<TAB>category<TAB>0|1", lineno);
    auto [it, inserted] = index.emplace(f[1], categories.size());
    if (inserted) categories.push_back(f[1]);
    if (f[2] == "1") pending.emplace_back(f[0], it->second);
  }
  if (pending.empty()) throw Error("lexicon " + name + " has no entries");
  Lexicon lex(std::move(name), std::move(categories));
  for (const auto& [entry, cat] : pending) lex.add(entry, cat);
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path, LexiconFormat format) {
  const auto content = read_file(path);
  auto name = path.stem().string();
  return format == LexiconFormat::liwc_dic ? parse_liwc_dic(content, std::move(name))
                                           : parse_emolex_tsv(content, std::move(name));
}

std::vector<double> lexicon_features(std::span<const Token> tokens, const Lexicon& lexicon) {
  std::vector<double> counts(lexicon.categories().size(), 0.0);
  std::size_t matchable = 0;
  for (const auto& t : tokens) {
    std::string_view key;
    if (t.kind == TokenKind::word) {
      key = t.normalized;
    } else if (t.kind == TokenKind::hashtag) {
      key = std::string_view(t.normalized).substr(1);
    } else {
      continue;
    }
    ++matchable;
    for (auto c : lexicon.match(key)) counts[c] += 1.0;
  }
  if (matchable > 0) {
    for (auto& c : counts) c /= static_cast<double>(matchable);
  }
  return counts;
}

}  // namespace hatepol
