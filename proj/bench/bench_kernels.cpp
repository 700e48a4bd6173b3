// Parallel kernels against their serial reference versions.
// Run with OMP_NUM_THREADS set to compare scaling.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "hatepol/analysis.hpp"
#include "hatepol/corpus.hpp"
#include "hatepol/features.hpp"
#include "hatepol/lexicon.hpp"
#include "hatepol/models.hpp"
#include "hatepol/quadtree.hpp"
#include "hatepol/rng.hpp"

using namespace hatepol;

namespace {

const std::filesystem::path kData = HATEPOL_DATA_DIR;

// The fixture tweets repeated `copies` times with fresh ids.
Corpus big_corpus(std::size_t copies) {
  const auto base = load_corpus(kData / "fixtures" / "policy.jsonl");
  Corpus c;
  c.name = "bench";
  for (std::size_t k = 0; k < copies; ++k) {
    for (auto t : base.tweets) {
      t.id += "_" + std::to_string(k);
      c.tweets.push_back(std::move(t));
    }
  }
  return c;
}

struct Fixture {
  Lexicon liwc = load_lexicon(kData / "sample_liwc.dic", LexiconFormat::liwc_dic);
  Lexicon nrc = load_lexicon(kData / "sample_nrc.tsv", LexiconFormat::emolex_tsv);
  Corpus corpus = big_corpus(20);
  FeatureMatrix matrix = featurize(corpus, liwc, nrc);
  std::vector<int> labels = binary_labels(labels_for(matrix, corpus));
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

std::vector<Vec2> cloud(std::size_t n) {
  Rng rng(7);
  std::vector<Vec2> pts(n);
  for (auto& v : pts) v = {rng.uniform(-10, 10), rng.uniform(-10, 10)};
  return pts;
}

void BM_featurize(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(featurize(f.corpus, f.liwc, f.nrc));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.corpus.size()));
}

void BM_featurize_serial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(featurize_serial(f.corpus, f.liwc, f.nrc));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.corpus.size()));
}

TrainConfig forest_config() {
  TrainConfig c;
  c.kind = ModelKind::forest;
  c.forest.n_trees = 40;
  return c;
}

void BM_forest_train(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(train(f.matrix, f.labels, forest_config()));
}

void BM_forest_train_serial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(train_serial(f.matrix, f.labels, forest_config()));
}

const Repulsion kRepulsion{1.0, 0.2, 1.0};

void BM_repulsion_exact(benchmark::State& state) {
  const auto pts = cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(repulsive_forces_exact(pts, kRepulsion));
}

void BM_repulsion_quadtree(benchmark::State& state) {
  const auto pts = cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(repulsive_forces_quadtree(pts, kRepulsion, 1.2));
}

void BM_repulsion_quadtree_serial(benchmark::State& state) {
  const auto pts = cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(repulsive_forces_quadtree_serial(pts, kRepulsion, 1.2));
}

void BM_correlation_ranking(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(correlation_ranking(f.matrix, f.labels));
}

void BM_correlation_ranking_serial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(correlation_ranking_serial(f.matrix, f.labels));
}

}  // namespace

BENCHMARK(BM_featurize)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_featurize_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_forest_train)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_forest_train_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_repulsion_exact)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_repulsion_quadtree)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_repulsion_quadtree_serial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_correlation_ranking)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_correlation_ranking_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
