#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hatepol/hashtag_graph.hpp"
#include "hatepol/quadtree.hpp"

namespace hatepol {

struct LayoutParams {
  double K = 1.0;
  double C = 0.2;
  double theta = 1.2;
  double tol = 0.01;
  std::size_t max_iter = 1000;
  double step_ratio = 0.9;               // step *= ratio after a non-improving iteration
  std::size_t growth_after = 5;          // consecutive improvements before step /= ratio
  double initial_step = 1.0;             // in units of the level's K
  double repulsion_exponent = 1.0;
  std::size_t coarsest_size = 50;
  double min_coarsening_ratio = 0.75;    // stop coarsening when a level keeps more than this share
  std::size_t exact_energy_limit = 300;  // accept/reject on exact energy up to this many nodes
  std::uint64_t seed = 42;

  void validate() const;
};

// Observer for a single refinement run: called after each iteration with the
// current positions and whether the proposed step was accepted.
using LayoutObserver = std::function<void(std::span<const Vec2> positions, bool accepted)>;

struct RefineResult {
  std::size_t iterations = 0;
  double final_max_displacement = 0.0;
  bool converged = false;
};

struct Layout {
  std::vector<Vec2> positions;
  LayoutParams params;
  std::size_t iterations = 0;          // summed over levels and components
  double final_max_displacement = 0.0; // largest over the finest-level runs
  std::size_t levels = 1;              // of the largest component
};

// E = Σ_edges d³/(3K) + Σ_pairs φ(d), with φ the repulsion potential.
double layout_energy_exact(std::span<const Vec2> positions, std::span<const GraphEdge> edges, const LayoutParams& p);

// Single-level force-directed refinement from the given positions using the
// params' K. Edge weights do not scale the forces.
RefineResult refine_layout(std::span<Vec2> positions, std::span<const GraphEdge> edges, const LayoutParams& p,
                           const LayoutObserver& observer = {});

Layout yifan_hu_layout(std::size_t node_count, std::span<const GraphEdge> edges, const LayoutParams& p = {});
Layout yifan_hu_layout(const HashtagGraph& graph, const LayoutParams& p = {});

}  // namespace hatepol
