#include "hatepol/sampling.hpp"

#include <fstream>
#include <map>
#include <unordered_set>

#include "hatepol/error.hpp"
#include "hatepol/text.hpp"

namespace hatepol {

StreamFileFetcher::StreamFileFetcher(const std::filesystem::path& stream)
    : stream_(load_corpus(stream, CorpusFormat::jsonl)) {}

StreamFileFetcher::StreamFileFetcher(Corpus stream) : stream_(std::move(stream)) {}

std::vector<Tweet> StreamFileFetcher::fetch(const std::string& hashtag) {
  std::vector<Tweet> out;
  for (const auto& t : stream_.tweets) {
    for (const auto& tag : t.hashtags) {
      if (tag == hashtag) {
        out.push_back(t);
        break;
      }
    }
  }
  return out;
}

SampleResult snowball_sample(const std::set<std::string>& seeds, TweetFetcher& fetcher, std::size_t rounds,
                             std::size_t max_per_round) {
  if (seeds.empty()) throw ArgumentError("snowball_sample needs at least one seed hashtag");
  SampleResult result;
  result.corpus.name = "snowball";
  std::unordered_set<std::string> collected;
  std::set<std::string> queried;
  std::set<std::string> pending;
  for (const auto& s : seeds) {
    std::string tag = text::to_lower(s);
    if (!tag.empty() && tag.front() == '#') tag.erase(0, 1);
    pending.insert(tag);
  }
  result.expanded_seeds = pending;

  for (std::size_t round = 0; round <= rounds; ++round) {
    // Hashtags are queried in sorted order; the round keeps the first
    // max_per_round unseen tweets.
    std::vector<Tweet> batch;
    for (const auto& tag : pending) {
      queried.insert(tag);
      std::vector<Tweet> found;
      try {
        found = fetcher.fetch(tag);
      } catch (const FetchError&) {
        throw;
      } catch (const std::exception& e) {
        throw FetchError(tag, e.what());
      }
      for (auto& t : found) {
        if (batch.size() >= max_per_round) break;
        if (collected.insert(t.id).second) batch.push_back(std::move(t));
      }
      if (batch.size() >= max_per_round) break;
    }
    // Tags skipped because the cap was reached carry over to the next round.
    std::erase_if(pending, [&](const std::string& tag) { return queried.contains(tag); });
    if (round == rounds) {
      for (auto& t : batch) result.corpus.tweets.push_back(std::move(t));
      break;
    }
    for (const auto& t : batch) {
      for (const auto& tag : t.hashtags) {
        if (!queried.contains(tag)) pending.insert(tag);
        result.expanded_seeds.insert(tag);
      }
    }
    for (auto& t : batch) result.corpus.tweets.push_back(std::move(t));
  }
  return result;
}

std::set<std::string> load_seeds(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open seeds file " + path.string());
  std::set<std::string> seeds;
  std::string line;
  while (std::getline(in, line)) {
    auto tag = text::trim(line);
    if (!tag.empty() && tag.front() == '#') tag.erase(0, 1);
    if (!tag.empty()) seeds.insert(text::to_lower(tag));
  }
  if (seeds.empty()) throw Error("seeds file " + path.string() + " lists no hashtags");
  return seeds;
}

}  // namespace hatepol
