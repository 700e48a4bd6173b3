#include "hatepol/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "hatepol/csv.hpp"
#include "hatepol/error.hpp"
#include "hatepol/rng.hpp"
#include "hatepol/text.hpp"

namespace hatepol {

using nlohmann::json;

std::string_view to_string(Label label) {
  switch (label) {
    case Label::hate: return "hate";
    case Label::normal: return "normal";
    case Label::unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

std::optional<Label> parse_label(std::string_view text) {
  if (text == "hate") return Label::hate;
  if (text == "normal") return Label::normal;
  if (text.empty() || text == "unlabeled") return Label::unlabeled;
  return std::nullopt;
}

std::string_view to_string(Split split) { return split == Split::train ? "train" : "test"; }

std::optional<Split> parse_split(std::string_view text) {
  if (text == "train") return Split::train;
  if (text == "test") return Split::test;
  return std::nullopt;
}

namespace {

bool is_hashtag_char(char32_t cp) { return text::is_letter(cp) || text::is_digit(cp) || cp == '_'; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string normalize_tag(std::string_view tag) {
  std::string t = text::trim(tag);
  if (!t.empty() && t.front() == '#') t.erase(0, 1);
  return text::to_lower(t);
}

bool mentions_hashtag(std::string_view tweet_text, const std::string& tag) {
  for (const auto& found : extract_hashtags(tweet_text)) {
    if (found == tag) return true;
  }
  return false;
}

void check_unique_ids(const Corpus& corpus) {
  std::unordered_set<std::string> seen;
  for (const auto& t : corpus.tweets) {
    if (!seen.insert(t.id).second) throw DuplicateIdError(t.id);
  }
}

}  // namespace

std::vector<std::string> extract_hashtags(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '#') {
      ++i;
      continue;
    }
    std::size_t j = i + 1, len = 0;
    std::string tag;
    while (j < s.size()) {
      const char32_t cp = text::decode(s, j, len);
      if (!is_hashtag_char(cp)) break;
      text::append_utf8(tag, text::to_lower(cp));
      j += len;
    }
    if (!tag.empty() && std::find(out.begin(), out.end(), tag) == out.end()) out.push_back(tag);
    i = j;
  }
  return out;
}

Corpus Corpus::select(std::optional<Split> which) const {
  Corpus out;
  out.name = name;
  if (!which) {
    out.tweets = tweets;
    return out;
  }
  if (!split_assignment) throw ArgumentError("corpus '" + name + "' has no split assignment");
  for (const auto& t : tweets) {
    if (split_assignment->at(t.id) == *which) out.tweets.push_back(t);
  }
  out.name = name + ":" + std::string(to_string(*which));
  return out;
}

Corpus parse_jsonl_corpus(std::string_view content, std::string name) {
  Corpus corpus;
  corpus.name = std::move(name);
  std::map<std::string, Split> splits;
  std::size_t with_split = 0;
  std::unordered_set<std::string> seen;

  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), lineno);
    }
    if (!rec.is_object()) throw ParseError("record is not an object", lineno);
    Tweet t;
    auto id = rec.find("id");
    if (id == rec.end() || !id->is_string() || id->get<std::string>().empty())
      throw ParseError("missing or empty string field 'id'", lineno);
    t.id = id->get<std::string>();
    auto txt = rec.find("text");
    if (txt == rec.end() || !txt->is_string()) throw ParseError("missing string field 'text'", lineno);
    t.text = txt->get<std::string>();

    if (auto lab = rec.find("label"); lab != rec.end() && !lab->is_null()) {
      if (!lab->is_string()) throw ParseError("label must be a string or null", lineno);
      const auto s = lab->get<std::string>();
      auto parsed = parse_label(s);
      if (!parsed || s.empty()) throw ParseError("unknown label '" + s + "'", lineno);
      t.label = *parsed;
    }
    if (auto dom = rec.find("source_domain"); dom != rec.end() && !dom->is_null()) {
      if (!dom->is_string()) throw ParseError("source_domain must be a string", lineno);
      t.source_domain = dom->get<std::string>();
    }
    if (auto tags = rec.find("hashtags"); tags != rec.end() && !tags->is_null()) {
      if (!tags->is_array()) throw ParseError("hashtags must be an array", lineno);
      for (const auto& tag : *tags) {
        if (!tag.is_string()) throw ParseError("hashtags must be strings", lineno);
        auto norm = normalize_tag(tag.get<std::string>());
        if (norm.empty()) throw ParseError("empty hashtag", lineno);
        if (!mentions_hashtag(t.text, norm))
          throw ParseError("hashtag '" + norm + "' does not occur in text", lineno);
        if (std::find(t.hashtags.begin(), t.hashtags.end(), norm) == t.hashtags.end())
          t.hashtags.push_back(std::move(norm));
      }
    } else {
      t.hashtags = extract_hashtags(t.text);
    }
    if (auto sp = rec.find("split"); sp != rec.end() && !sp->is_null()) {
      auto parsed = sp->is_string() ? parse_split(sp->get<std::string>()) : std::nullopt;
      if (!parsed) throw ParseError("split must be \"train\" or \"test\"", lineno);
      splits[t.id] = *parsed;
      ++with_split;
    }
    if (!seen.insert(t.id).second) throw DuplicateIdError(t.id);
    corpus.tweets.push_back(std::move(t));
  }
  if (with_split > 0) {
    if (with_split != corpus.tweets.size())
      throw Error("split given for " + std::to_string(with_split) + " of " +
                  std::to_string(corpus.tweets.size()) + " records; it must cover all or none");
    corpus.split_assignment = std::move(splits);
  }
  return corpus;
}

Corpus parse_csv_corpus(std::string_view content, std::string name) {
  Corpus corpus;
  corpus.name = std::move(name);
  std::istringstream in{std::string(content)};
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) return corpus;
  int id_col = -1, text_col = -1, label_col = -1, domain_col = -1;
  for (std::size_t i = 0; i < header->size(); ++i) {
    const auto h = text::trim((*header)[i]);
    if (h == "id") id_col = static_cast<int>(i);
    if (h == "text") text_col = static_cast<int>(i);
    if (h == "label") label_col = static_cast<int>(i);
    if (h == "source_domain") domain_col = static_cast<int>(i);
  }
  if (id_col < 0 || text_col < 0) throw ParseError("CSV header must contain id and text", reader.record_line());
  std::unordered_set<std::string> seen;
  while (auto rec = reader.next()) {
    const auto line = reader.record_line();
    if (rec->size() != header->size())
      throw ParseError("expected " + std::to_string(header->size()) + " fields, got " +
                           std::to_string(rec->size()),
                       line);
    Tweet t;
    t.id = (*rec)[id_col];
    if (t.id.empty()) throw ParseError("empty id", line);
    t.text = (*rec)[text_col];
    if (label_col >= 0) {
      auto parsed = parse_label((*rec)[label_col]);
      if (!parsed) throw ParseError("unknown label '" + (*rec)[label_col] + "'", line);
      t.label = *parsed;
    }
    if (domain_col >= 0) t.source_domain = (*rec)[domain_col];
    t.hashtags = extract_hashtags(t.text);
    if (!seen.insert(t.id).second) throw DuplicateIdError(t.id);
    corpus.tweets.push_back(std::move(t));
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  const auto content = read_file(path);
  auto name = path.stem().string();
  return format == CorpusFormat::csv ? parse_csv_corpus(content, std::move(name))
                                     : parse_jsonl_corpus(content, std::move(name));
}

Corpus load_corpus(const std::filesystem::path& path) {
  return load_corpus(path, path.extension() == ".csv" ? CorpusFormat::csv : CorpusFormat::jsonl);
}

std::string to_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& t : corpus.tweets) {
    json rec = json::object();
    rec["id"] = t.id;
    rec["text"] = t.text;
    rec["label"] = t.label == Label::unlabeled ? json(nullptr) : json(std::string(to_string(t.label)));
    if (!t.source_domain.empty()) rec["source_domain"] = t.source_domain;
    rec["hashtags"] = t.hashtags;
    if (corpus.split_assignment) rec["split"] = std::string(to_string(corpus.split_assignment->at(t.id)));
    out += rec.dump(-1, ' ', false, json::error_handler_t::replace);
    out.push_back('\n');
  }
  return out;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << to_jsonl(corpus);
  if (!out) throw Error("write failed: " + path.string());
}

void validate(const Corpus& corpus) {
  check_unique_ids(corpus);
  for (const auto& t : corpus.tweets) {
    if (t.id.empty()) throw Error("empty tweet id");
    for (const auto& tag : t.hashtags) {
      if (!mentions_hashtag(t.text, tag)) throw Error("tweet " + t.id + ": hashtag '" + tag + "' not in text");
    }
  }
  if (corpus.split_assignment) {
    if (corpus.split_assignment->size() != corpus.tweets.size())
      throw Error("split assignment does not cover the corpus exactly");
    for (const auto& t : corpus.tweets) {
      if (!corpus.split_assignment->contains(t.id)) throw Error("tweet " + t.id + " has no split");
    }
  }
}

bool is_retweet(std::string_view s) { return text::trim(s).starts_with("RT @"); }

bool is_only_hashtags_and_urls(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::string token;
  while (in >> token) {
    while (!token.empty() && std::string_view(".,;:!?)").find(token.back()) != std::string_view::npos)
      token.pop_back();
    if (token.empty()) continue;
    const bool url = text::starts_with_icase(token, "http://") || text::starts_with_icase(token, "https://") ||
                     text::starts_with_icase(token, "www.");
    bool hashtag = false;
    if (token.size() > 1 && token.front() == '#') {
      hashtag = true;
      for (std::size_t i = 1, len = 0; i < token.size(); i += len) {
        if (!is_hashtag_char(text::decode(token, i, len))) {
          hashtag = false;
          break;
        }
      }
    }
    if (!url && !hashtag) return false;
  }
  return true;
}

Corpus clean(const Corpus& corpus) {
  Corpus out;
  out.name = corpus.name;
  std::unordered_set<std::string> seen_text;
  for (const auto& t : corpus.tweets) {
    if (is_retweet(t.text) || is_only_hashtags_and_urls(t.text)) continue;
    if (!seen_text.insert(text::normalize_whitespace_lower(t.text)).second) continue;
    out.tweets.push_back(t);
  }
  if (corpus.split_assignment) {
    std::map<std::string, Split> kept;
    for (const auto& t : out.tweets) kept[t.id] = corpus.split_assignment->at(t.id);
    out.split_assignment = std::move(kept);
  }
  return out;
}

Corpus split(const Corpus& corpus, double train_fraction, std::uint64_t seed, bool stratified) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ArgumentError("train_fraction must lie in (0, 1), got " + std::to_string(train_fraction));
  const std::size_t n = corpus.size();
  const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  Rng rng(seed);

  std::vector<std::size_t> chosen;
  if (!stratified) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(std::span(order));
    chosen.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  } else {
    std::vector<std::size_t> strata[3];
    for (std::size_t i = 0; i < n; ++i) strata[static_cast<int>(corpus.tweets[i].label)].push_back(i);
    if (strata[0].empty() && strata[1].empty())
      throw ArgumentError("stratified split needs labeled tweets");
    // Largest-remainder apportionment keeps every stratum within one tweet of
    // its exact share while the quotas add up to n_train.
    std::size_t quota[3];
    double remainder[3];
    std::size_t assigned = 0;
    for (int s = 0; s < 3; ++s) {
      const double exact = train_fraction * static_cast<double>(strata[s].size());
      quota[s] = static_cast<std::size_t>(std::floor(exact));
      remainder[s] = exact - static_cast<double>(quota[s]);
      assigned += quota[s];
    }
    while (assigned < n_train) {
      int best = -1;
      for (int s = 0; s < 3; ++s) {
        if (quota[s] >= strata[s].size()) continue;
        if (best < 0 || remainder[s] > remainder[best]) best = s;
      }
      ++quota[best];
      remainder[best] = -1.0;
      ++assigned;
    }
    while (assigned > n_train) {
      int best = -1;
      for (int s = 0; s < 3; ++s) {
        if (quota[s] == 0) continue;
        if (best < 0 || remainder[s] < remainder[best]) best = s;
      }
      --quota[best];
      remainder[best] = 2.0;
      --assigned;
    }
    for (int s = 0; s < 3; ++s) {
      rng.shuffle(std::span(strata[s]));
      chosen.insert(chosen.end(), strata[s].begin(), strata[s].begin() + static_cast<std::ptrdiff_t>(quota[s]));
    }
  }

  Corpus out = corpus;
  std::map<std::string, Split> assignment;
  for (const auto& t : corpus.tweets) assignment[t.id] = Split::test;
  for (auto i : chosen) assignment[corpus.tweets[i].id] = Split::train;
  out.split_assignment = std::move(assignment);
  return out;
}

CorpusStats stats(const Corpus& corpus) {
  CorpusStats s;
  std::set<std::string> tags;
  for (const auto& t : corpus.tweets) {
    ++s.total;
    switch (t.label) {
      case Label::hate: ++s.n_hate; break;
      case Label::normal: ++s.n_normal; break;
      case Label::unlabeled: ++s.n_unlabeled; break;
    }
    tags.insert(t.hashtags.begin(), t.hashtags.end());
  }
  if (s.n_hate + s.n_normal > 0)
    s.hate_fraction = static_cast<double>(s.n_hate) / static_cast<double>(s.n_hate + s.n_normal);
  s.distinct_hashtags = tags.size();
  return s;
}

double cohen_kappa(const AnnotationPair& pairs) {
  const auto n = pairs.items.size();
  if (n < 2) throw ArgumentError("cohen_kappa needs at least 2 annotated items");
  double agree = 0, a_hate = 0, b_hate = 0;
  for (const auto& [id, labels] : pairs.items) {
    const auto [a, b] = labels;
    if (a == Label::unlabeled || b == Label::unlabeled)
      throw Error("item " + id + " lacks a label from both annotators");
    agree += (a == b);
    a_hate += (a == Label::hate);
    b_hate += (b == Label::hate);
  }
  const double dn = static_cast<double>(n);
  const double p_o = agree / dn;
  const double pa = a_hate / dn, pb = b_hate / dn;
  const double p_e = pa * pb + (1.0 - pa) * (1.0 - pb);
  if (p_e == 1.0) return 1.0;
  return (p_o - p_e) / (1.0 - p_e);
}

AnnotationPair pair_annotations(const Corpus& a, const Corpus& b) {
  std::map<std::string, Label> b_labels;
  for (const auto& t : b.tweets) b_labels[t.id] = t.label;
  AnnotationPair pairs;
  for (const auto& t : a.tweets) {
    auto it = b_labels.find(t.id);
    if (it == b_labels.end()) throw IdMismatchError("id '" + t.id + "' missing from second annotation");
    pairs.items[t.id] = {t.label, it->second};
  }
  if (pairs.items.size() != b_labels.size()) throw IdMismatchError("second annotation has ids absent from the first");
  return pairs;
}

}  // namespace hatepol
