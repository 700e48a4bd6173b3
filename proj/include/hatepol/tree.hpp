#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hatepol/rng.hpp"

namespace hatepol {

// Dense row-major view over training data.
struct MatrixView {
  std::span<const double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::span<const double> row(std::size_t r) const { return values.subspan(r * cols, cols); }
  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

struct TreeNode {
  // -1 marks a leaf.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  // Weighted fraction of hate samples reaching the node.
  double hate_fraction = 0.0;
  std::size_t samples = 0;
  int depth = 0;

  bool is_leaf() const noexcept { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

// Binary CART tree; samples with x[feature] <= threshold go left.
struct DecisionTree {
  std::vector<TreeNode> nodes;

  const TreeNode& leaf(std::span<const double> x) const;
  double score(std::span<const double> x) const { return leaf(x).hate_fraction; }
  int depth() const;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

struct TreeBuildOptions {
  // Negative means unlimited.
  int max_depth = -1;
  std::size_t min_leaf = 1;
  // Candidate columns per split; 0 or >= cols means all columns.
  std::size_t features_per_split = 0;
};

// Grows a Gini tree over `samples` (row indices, repeats allowed) with
// per-sample weights. Equal-gain candidates resolve to the lowest column,
// then the lowest threshold. `rng` is needed only when sampling columns.
DecisionTree build_tree(const MatrixView& x, std::span<const int> labels, std::span<const std::size_t> samples,
                        std::span<const double> weights, const TreeBuildOptions& options, Rng* rng = nullptr);

}  // namespace hatepol
