#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hatepol {

enum class Label { hate, normal, unlabeled };

std::string_view to_string(Label label);
// Accepts "hate", "normal" and, for unlabeled, "" or "unlabeled".
std::optional<Label> parse_label(std::string_view text);

enum class Split { train, test };

std::string_view to_string(Split split);
std::optional<Split> parse_split(std::string_view text);

struct Tweet {
  std::string id;
  std::string text;
  Label label = Label::unlabeled;
  // Lowercase, without '#', in order of first appearance, no repeats.
  std::vector<std::string> hashtags;
  std::string source_domain;

  friend bool operator==(const Tweet&, const Tweet&) = default;
};

// Hashtags of `text`: '#' followed by letters, digits or underscores, lowercased.
std::vector<std::string> extract_hashtags(std::string_view text);

struct Corpus {
  std::string name;
  std::vector<Tweet> tweets;
  // When present, covers every tweet id exactly once.
  std::optional<std::map<std::string, Split>> split_assignment;

  std::size_t size() const noexcept { return tweets.size(); }
  bool empty() const noexcept { return tweets.empty(); }

  // Tweets whose split matches; all tweets when no assignment exists and
  // `split` is nullopt.
  Corpus select(std::optional<Split> split) const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

enum class CorpusFormat { jsonl, csv };

// Throws ParseError (with line number) on malformed records and
// DuplicateIdError on repeated ids.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);
// Format chosen from the extension: .csv means CSV, anything else JSONL.
Corpus load_corpus(const std::filesystem::path& path);
Corpus parse_jsonl_corpus(std::string_view content, std::string name);
Corpus parse_csv_corpus(std::string_view content, std::string name);

void save_corpus(const Corpus& corpus, const std::filesystem::path& path);
std::string to_jsonl(const Corpus& corpus);

// Validates the Tweet/Corpus invariants, throwing on the first violation.
void validate(const Corpus& corpus);

// Drops content duplicates, retweets, and hashtag/URL-only tweets.
Corpus clean(const Corpus& corpus);

bool is_retweet(std::string_view text);
bool is_only_hashtags_and_urls(std::string_view text);

Corpus split(const Corpus& corpus, double train_fraction, std::uint64_t seed, bool stratified);

struct CorpusStats {
  std::size_t total = 0;
  std::size_t n_hate = 0;
  std::size_t n_normal = 0;
  std::size_t n_unlabeled = 0;
  // nullopt when the corpus has no labeled tweets.
  std::optional<double> hate_fraction;
  std::size_t distinct_hashtags = 0;
};

CorpusStats stats(const Corpus& corpus);

// Per-item labels from two annotators; only hate/normal allowed.
struct AnnotationPair {
  std::map<std::string, std::pair<Label, Label>> items;
};

double cohen_kappa(const AnnotationPair& pairs);

// Pairs tweets of two annotator corpora by id.
AnnotationPair pair_annotations(const Corpus& a, const Corpus& b);

}  // namespace hatepol
