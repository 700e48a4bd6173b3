#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "hatepol/corpus.hpp"

namespace hatepol {

// Source of tweets answering hashtag queries. Implementations throw
// FetchError naming the hashtag on failure.
class TweetFetcher {
 public:
  virtual ~TweetFetcher() = default;
  // Tweets carrying `hashtag` (lowercase, no '#'), in source order.
  virtual std::vector<Tweet> fetch(const std::string& hashtag) = 0;
};

// Offline fetcher over a local JSONL stream file, loaded once.
class StreamFileFetcher final : public TweetFetcher {
 public:
  explicit StreamFileFetcher(const std::filesystem::path& stream);
  explicit StreamFileFetcher(Corpus stream);

  std::vector<Tweet> fetch(const std::string& hashtag) override;

 private:
  Corpus stream_;
};

struct SampleResult {
  Corpus corpus;
  std::set<std::string> expanded_seeds;
};

SampleResult snowball_sample(const std::set<std::string>& seeds, TweetFetcher& fetcher, std::size_t rounds,
                             std::size_t max_per_round);

// One hashtag per line, '#' optional; blank lines ignored.
std::set<std::string> load_seeds(const std::filesystem::path& path);

}  // namespace hatepol
