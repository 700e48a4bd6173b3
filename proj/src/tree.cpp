#include "hatepol/tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hatepol {

const TreeNode& DecisionTree::leaf(std::span<const double> x) const {
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const auto& n = nodes[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
  }
  return nodes[i];
}

int DecisionTree::depth() const {
  int d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth);
  return d;
}

namespace {

double gini(double hate, double total) {
  if (total <= 0) return 0.0;
  const double p = hate / total;
  return 2.0 * p * (1.0 - p);
}

struct Entry {
  std::size_t row;
  double weight;
};

class Builder {
 public:
  Builder(const MatrixView& x, std::span<const int> y, const TreeBuildOptions& opt, Rng* rng)
      : x_(x), y_(y), opt_(opt), rng_(rng) {
    columns_.resize(x.cols);
    std::iota(columns_.begin(), columns_.end(), std::size_t{0});
  }

  DecisionTree run(std::vector<Entry> entries) {
    grow(std::move(entries), 0);
    return std::move(tree_);
  }

 private:
  const MatrixView& x_;
  std::span<const int> y_;
  TreeBuildOptions opt_;
  Rng* rng_;
  std::vector<std::size_t> columns_;
  DecisionTree tree_;

  struct Candidate {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
  };

  std::vector<std::size_t> candidate_columns() {
    const std::size_t m = x_.cols;
    const std::size_t k = opt_.features_per_split;
    if (k == 0 || k >= m) return columns_;
    if (!rng_) throw std::logic_error("column sampling needs an rng");
    std::vector<std::size_t> pool = columns_;
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng_->below(m - i)]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

  Candidate best_split(const std::vector<Entry>& entries, double total_w, double hate_w) {
    Candidate best;
    const double parent = gini(hate_w, total_w);
    const std::size_t n = entries.size();
    std::vector<std::pair<double, std::size_t>> sorted(n);
    for (std::size_t c : candidate_columns()) {
      for (std::size_t i = 0; i < n; ++i) sorted[i] = {x_.at(entries[i].row, c), i};
      std::sort(sorted.begin(), sorted.end());
      double left_w = 0, left_hate = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto& e = entries[sorted[i].second];
        left_w += e.weight;
        if (y_[e.row]) left_hate += e.weight;
        const double a = sorted[i].first, b = sorted[i + 1].first;
        if (a == b) continue;
        const std::size_t n_left = i + 1;
        if (n_left < opt_.min_leaf || n - n_left < opt_.min_leaf) continue;
        const double right_w = total_w - left_w;
        const double right_hate = hate_w - left_hate;
        const double child = (left_w * gini(left_hate, left_w) + right_w * gini(right_hate, right_w)) / total_w;
        const double gain = parent - child;
        if (gain > best.gain + 1e-12) {
          double thr = 0.5 * (a + b);
          if (!(thr < b)) thr = a;
          best = {static_cast<int>(c), thr, gain};
        }
      }
    }
    return best;
  }

  int grow(std::vector<Entry> entries, int depth) {
    double total_w = 0, hate_w = 0;
    for (const auto& e : entries) {
      total_w += e.weight;
      if (y_[e.row]) hate_w += e.weight;
    }
    const int index = static_cast<int>(tree_.nodes.size());
    TreeNode node;
    node.hate_fraction = total_w > 0 ? hate_w / total_w : 0.0;
    node.samples = entries.size();
    node.depth = depth;
    tree_.nodes.push_back(node);

    const bool depth_capped = opt_.max_depth >= 0 && depth >= opt_.max_depth;
    const bool pure = hate_w <= 0.0 || hate_w >= total_w;
    if (depth_capped || pure || entries.size() < 2 * opt_.min_leaf) return index;

    const auto split = best_split(entries, total_w, hate_w);
    if (split.feature < 0) return index;

    std::vector<Entry> left, right;
    for (const auto& e : entries) {
      (x_.at(e.row, static_cast<std::size_t>(split.feature)) <= split.threshold ? left : right).push_back(e);
    }
    entries.clear();
    entries.shrink_to_fit();
    tree_.nodes[index].feature = split.feature;
    tree_.nodes[index].threshold = split.threshold;
    const int l = grow(std::move(left), depth + 1);
    tree_.nodes[index].left = l;
    const int r = grow(std::move(right), depth + 1);
    tree_.nodes[index].right = r;
    return index;
  }
};

}  // namespace

DecisionTree build_tree(const MatrixView& x, std::span<const int> labels, std::span<const std::size_t> samples,
                        std::span<const double> weights, const TreeBuildOptions& options, Rng* rng) {
  if (samples.size() != weights.size()) throw std::invalid_argument("samples and weights differ in length");
  std::vector<Entry> entries(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) entries[i] = {samples[i], weights[i]};
  return Builder(x, labels, options, rng).run(std::move(entries));
}

}  // namespace hatepol
