#include <doctest.h>

#include <set>

#include "hatepol/corpus.hpp"
#include "hatepol/error.hpp"
#include "hatepol/sampling.hpp"
#include "support.hpp"

using namespace hatepol;

namespace {

Tweet tw(std::string id, std::string text, Label label = Label::normal) {
  Tweet t;
  t.id = std::move(id);
  t.hashtags = extract_hashtags(text);
  t.text = std::move(text);
  t.label = label;
  return t;
}

Corpus corpus_of(std::vector<Tweet> tweets) {
  Corpus c;
  c.name = "c";
  c.tweets = std::move(tweets);
  return c;
}

AnnotationPair pairs_of(const std::vector<Label>& a, const std::vector<Label>& b) {
  AnnotationPair p;
  for (std::size_t i = 0; i < a.size(); ++i) p.items["i" + std::to_string(i)] = {a[i], b[i]};
  return p;
}

constexpr Label H = Label::hate;
constexpr Label N = Label::normal;

}  // namespace

TEST_CASE("load jsonl maps fields and derives hashtags") {
  auto c = parse_jsonl_corpus(R"({"id":"1","text":"ciao #legge","label":"normal"})", "x");
  REQUIRE(c.size() == 1);
  CHECK(c.tweets[0].label == Label::normal);
  CHECK(c.tweets[0].hashtags == std::vector<std::string>{"legge"});

  auto unl = parse_jsonl_corpus(R"({"id":"2","text":"senza etichetta"})", "x");
  CHECK(unl.tweets[0].label == Label::unlabeled);
}

TEST_CASE("load rejects duplicates, unknown labels and bad lines") {
  CHECK_THROWS_AS(parse_jsonl_corpus("{\"id\":\"7\",\"text\":\"a\"}\n{\"id\":\"7\",\"text\":\"b\"}\n", "x"),
                  DuplicateIdError);
  try {
    parse_jsonl_corpus("{\"id\":\"1\",\"text\":\"a\"}\n{\"id\":\"2\",\"text\":\"b\",\"label\":\"hateful\"}\n", "x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_jsonl_corpus("{not json}\n", "x"), ParseError);
  CHECK_THROWS_AS(parse_jsonl_corpus(R"({"id":"1","text":"a","hashtags":["nope"]})", "x"), ParseError);
}

TEST_CASE("csv ingestion") {
  auto c = parse_csv_corpus("id,text,label\n1,\"ciao, #Legge\",hate\n2,altro,\n", "x");
  REQUIRE(c.size() == 2);
  CHECK(c.tweets[0].label == Label::hate);
  CHECK(c.tweets[0].hashtags == std::vector<std::string>{"legge"});
  CHECK(c.tweets[1].label == Label::unlabeled);
}

TEST_CASE("clean removes duplicates, retweets and tag-only tweets") {
  auto c = corpus_of({tw("1", "Stesso testo"), tw("2", "stesso   TESTO"), tw("3", "RT @user: testo"),
                      tw("4", "#solo #hashtag http://a.b"), tw("5", "#solo ma con testo")});
  auto out = clean(c);
  std::vector<std::string> ids;
  for (const auto& t : out.tweets) ids.push_back(t.id);
  CHECK(ids == std::vector<std::string>{"1", "5"});
  CHECK(clean(Corpus{}).empty());
}

TEST_CASE("clean is idempotent") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto c = testing::random_corpus(60, seed);
    auto once = clean(c);
    CHECK(clean(once) == once);
  }
}

TEST_CASE("split sizes, range and determinism") {
  std::vector<Tweet> ts;
  for (int i = 0; i < 1264; ++i) ts.push_back(tw("t" + std::to_string(i), "testo " + std::to_string(i), i < 140 ? H : N));
  auto c = corpus_of(ts);
  auto s = split(c, 0.791, 7, true);
  REQUIRE(s.split_assignment);
  CHECK(s.select(Split::train).size() == 1000);
  CHECK(s.select(Split::test).size() == 264);
  CHECK(split(c, 0.791, 7, true).split_assignment == s.split_assignment);
  CHECK(split(c, 0.791, 8, true).split_assignment != s.split_assignment);
  CHECK_THROWS_AS(split(c, 1.5, 7, true), ArgumentError);
  CHECK_THROWS_AS(split(c, 0.0, 7, false), ArgumentError);
}

TEST_CASE("stratified split preserves the hate fraction") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto c = testing::random_corpus(50 + seed * 7, seed);
    for (auto& t : c.tweets) {
      if (t.label == Label::unlabeled) t.label = N;
    }
    const double f = 0.2 + 0.02 * static_cast<double>(seed % 30);
    auto s = split(c, f, seed, true);
    auto train = s.select(Split::train);
    CHECK(train.size() == static_cast<std::size_t>(std::llround(f * static_cast<double>(c.size()))));
    const double whole = *stats(c).hate_fraction;
    const double part = *stats(train).hate_fraction;
    CHECK(std::fabs(part - whole) <= 1.0 / static_cast<double>(train.size()) + 1e-12);
  }
}

TEST_CASE("stats") {
  auto c = corpus_of({tw("1", "a #x", H), tw("2", "b #y", H), tw("3", "c #x", H), tw("4", "d", N),
                      tw("5", "e", Label::unlabeled)});
  auto s = stats(c);
  CHECK(s.total == 5);
  CHECK(s.total == s.n_hate + s.n_normal + s.n_unlabeled);
  CHECK(*s.hate_fraction == 0.75);
  CHECK(s.distinct_hashtags == 2);
  auto e = stats(Corpus{});
  CHECK(e.total == 0);
  CHECK_FALSE(e.hate_fraction.has_value());
}

TEST_CASE("cohen kappa hand examples") {
  CHECK(cohen_kappa(pairs_of({H, N, N, H}, {H, N, N, H})) == 1.0);
  CHECK(cohen_kappa(pairs_of({H, H, N, N}, {H, N, N, N})) == 0.5);
  // Per-annotator marginals give p_e = 1*0 + 0*1 = 0 here, so κ = p_o = 0.
  CHECK(cohen_kappa(pairs_of({H, H}, {N, N})) == 0.0);
  CHECK(cohen_kappa(pairs_of({H, N}, {N, H})) == -1.0);
  CHECK(cohen_kappa(pairs_of({N, N, N}, {N, N, N})) == 1.0);
  CHECK_THROWS_AS(cohen_kappa(pairs_of({H}, {H})), ArgumentError);
}

TEST_CASE("cohen kappa is symmetric and relabeling-invariant") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Label> a, b;
    const auto n = 2 + rng.below(40);
    for (std::uint64_t i = 0; i < n; ++i) {
      a.push_back(rng.below(2) ? H : N);
      b.push_back(rng.below(2) ? H : N);
    }
    const double k = cohen_kappa(pairs_of(a, b));
    CHECK(cohen_kappa(pairs_of(b, a)) == doctest::Approx(k).epsilon(1e-12));
    auto flip = [](std::vector<Label> v) {
      for (auto& l : v) l = l == H ? N : H;
      return v;
    };
    CHECK(cohen_kappa(pairs_of(flip(a), flip(b))) == doctest::Approx(k).epsilon(1e-12));
    CHECK(k >= -1.0);
    CHECK(k <= 1.0);
  }
}

TEST_CASE("pair_annotations joins by id") {
  auto a = corpus_of({tw("1", "x", H), tw("2", "y", N)});
  auto b = corpus_of({tw("2", "y", N), tw("1", "x", N)});
  auto p = pair_annotations(a, b);
  CHECK(p.items.at("1") == std::pair{H, N});
  CHECK(p.items.at("2") == std::pair{N, N});
}

TEST_CASE("jsonl round trip") {
  const auto dir = testing::scratch_dir("corpus_rt");
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto c = testing::random_corpus(40, seed);
    c.name = "rt";
    c.tweets[0].source_domain = "policy";
    if (seed % 2) c = split(c, 0.5, seed, false);
    save_corpus(c, dir / "rt.jsonl");
    CHECK(load_corpus(dir / "rt.jsonl") == c);
  }
}

TEST_CASE("snowball sampling") {
  auto stream = corpus_of({tw("1", "prima #legge #dpcm", Label::unlabeled), tw("2", "poi #dpcm #zona", Label::unlabeled),
                           tw("3", "altro #calcio", Label::unlabeled), tw("4", "e #zona", Label::unlabeled)});
  StreamFileFetcher fetcher(stream);

  auto r0 = snowball_sample({"legge"}, fetcher, 0, 100);
  CHECK(r0.corpus.size() == 1);
  CHECK(r0.expanded_seeds == std::set<std::string>{"legge"});

  auto r1 = snowball_sample({"legge"}, fetcher, 1, 100);
  CHECK(r1.expanded_seeds.contains("legge"));
  CHECK(r1.expanded_seeds.contains("dpcm"));
  CHECK(r1.corpus.size() == 2);

  // More rounds never lose tweets while the cap does not bind.
  std::set<std::string> previous;
  for (std::size_t rounds = 0; rounds < 4; ++rounds) {
    auto r = snowball_sample({"legge"}, fetcher, rounds, 100);
    std::set<std::string> ids;
    for (const auto& t : r.corpus.tweets) ids.insert(t.id);
    CHECK(std::includes(ids.begin(), ids.end(), previous.begin(), previous.end()));
    previous = ids;
  }
  CHECK_FALSE(previous.contains("3"));
}

TEST_CASE("snowball superset property on random streams") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto stream = testing::random_corpus(80, seed, 15);
    StreamFileFetcher fetcher(stream);
    std::set<std::string> previous;
    for (std::size_t rounds = 0; rounds < 4; ++rounds) {
      auto r = snowball_sample({"tag0"}, fetcher, rounds, 1000);
      std::set<std::string> ids;
      for (const auto& t : r.corpus.tweets) ids.insert(t.id);
      CHECK(std::includes(ids.begin(), ids.end(), previous.begin(), previous.end()));
      previous = ids;
    }
  }
}

namespace {
struct FailingFetcher : TweetFetcher {
  std::vector<Tweet> fetch(const std::string& tag) override { throw FetchError(tag, "offline"); }
};
}  // namespace

TEST_CASE("fetch failure names the hashtag") {
  FailingFetcher f;
  try {
    snowball_sample({"legge"}, f, 1, 10);
    FAIL("expected a fetch error");
  } catch (const FetchError& e) {
    CHECK(std::string(e.what()).find("legge") != std::string::npos);
  }
}
