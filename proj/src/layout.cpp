#include "hatepol/layout.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "hatepol/error.hpp"
#include "hatepol/rng.hpp"

namespace hatepol {

void LayoutParams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0; };
  if (!positive(K)) throw ArgumentError("layout K must be positive");
  if (!positive(C)) throw ArgumentError("layout C must be positive");
  if (!positive(theta)) throw ArgumentError("layout theta must be positive");
  if (!positive(tol)) throw ArgumentError("layout tol must be positive");
  if (!positive(initial_step)) throw ArgumentError("layout initial_step must be positive");
  if (!positive(repulsion_exponent)) throw ArgumentError("layout repulsion exponent must be positive");
  if (!(step_ratio > 0 && step_ratio < 1)) throw ArgumentError("layout step ratio must lie in (0, 1)");
  if (!(min_coarsening_ratio > 0 && min_coarsening_ratio <= 1))
    throw ArgumentError("layout coarsening ratio must lie in (0, 1]");
  if (coarsest_size < 2) throw ArgumentError("layout coarsest size must be at least 2");
}

namespace {

Repulsion repulsion_of(const LayoutParams& p) { return {p.K, p.C, p.repulsion_exponent}; }

double attractive_energy(std::span<const Vec2> x, std::span<const GraphEdge> edges, double K) {
  double e = 0.0;
  for (const auto& ed : edges) {
    const double d = (x[ed.u] - x[ed.v]).norm();
    e += d * d * d / (3.0 * K);
  }
  return e;
}

void add_attraction(std::span<const Vec2> x, std::span<const GraphEdge> edges, double K, std::vector<Vec2>& f) {
  for (const auto& ed : edges) {
    if (ed.u == ed.v) continue;
    const Vec2 delta = x[ed.v] - x[ed.u];
    const double d = delta.norm();
    // f_a(d) = d²/K along the edge, i.e. (d/K)·delta.
    const Vec2 pull = (d / K) * delta;
    f[ed.u] += pull;
    f[ed.v] -= pull;
  }
}

struct Level {
  std::size_t n = 0;
  std::vector<GraphEdge> edges;
  std::vector<std::size_t> to_coarse;  // fine node -> node of the next coarser level
};

// One round of maximal edge matching. Nodes are visited in seeded random
// order; each unmatched node pairs with its unmatched neighbour of smallest
// degree (lowest index on ties).
Level coarsen(std::size_t n, std::span<const GraphEdge> edges, Rng& rng, std::vector<GraphEdge>& coarse_edges,
              std::size_t& coarse_n) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> mate(n, none);
  for (std::size_t i : order) {
    if (mate[i] != none) continue;
    std::size_t best = none;
    for (std::size_t j : adj[i]) {
      if (j == i || mate[j] != none) continue;
      if (best == none || adj[j].size() < adj[best].size() || (adj[j].size() == adj[best].size() && j < best))
        best = j;
    }
    if (best != none) {
      mate[i] = best;
      mate[best] = i;
    }
  }
  Level level;
  level.n = n;
  level.edges.assign(edges.begin(), edges.end());
  level.to_coarse.assign(n, none);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (level.to_coarse[i] != none) continue;
    level.to_coarse[i] = next;
    if (mate[i] != none) level.to_coarse[mate[i]] = next;
    ++next;
  }
  std::map<std::pair<std::size_t, std::size_t>, double> merged;
  for (const auto& e : edges) {
    const std::size_t a = level.to_coarse[e.u], b = level.to_coarse[e.v];
    if (a == b) continue;
    merged[{std::min(a, b), std::max(a, b)}] += e.weight;
  }
  coarse_edges.clear();
  for (const auto& [key, w] : merged) coarse_edges.push_back({key.first, key.second, w});
  coarse_n = next;
  return level;
}

struct ComponentLayout {
  std::vector<Vec2> positions;
  std::size_t iterations = 0;
  double final_max_displacement = 0.0;
  std::size_t levels = 1;
};

ComponentLayout multilevel(std::size_t n, std::vector<GraphEdge> edges, const LayoutParams& p, std::uint64_t seed) {
  ComponentLayout out;
  if (n == 1) {
    out.positions.assign(1, Vec2{});
    return out;
  }
  Rng rng(seed);
  std::vector<Level> hierarchy;
  std::size_t cur_n = n;
  std::vector<GraphEdge> cur_edges = std::move(edges);
  while (cur_n > p.coarsest_size) {
    std::vector<GraphEdge> next_edges;
    std::size_t next_n = 0;
    Level level = coarsen(cur_n, cur_edges, rng, next_edges, next_n);
    if (next_n == cur_n) break;
    const bool poor = static_cast<double>(next_n) > p.min_coarsening_ratio * static_cast<double>(cur_n);
    hierarchy.push_back(std::move(level));
    cur_n = next_n;
    cur_edges = std::move(next_edges);
    if (poor) break;
  }
  out.levels = hierarchy.size() + 1;

  // Coarser levels use a natural length grown by √(7/4) per level.
  const double growth = std::sqrt(7.0 / 4.0);
  double K = p.K * std::pow(growth, static_cast<double>(hierarchy.size()));
  const double side = std::sqrt(static_cast<double>(cur_n)) * K;
  std::vector<Vec2> x(cur_n);
  for (auto& v : x) v = {rng.uniform(-0.5 * side, 0.5 * side), rng.uniform(-0.5 * side, 0.5 * side)};

  LayoutParams lp = p;
  lp.K = K;
  RefineResult r = refine_layout(x, cur_edges, lp);
  out.iterations += r.iterations;

  for (std::size_t l = hierarchy.size(); l-- > 0;) {
    const Level& level = hierarchy[l];
    K /= growth;
    std::vector<Vec2> fine(level.n);
    for (std::size_t i = 0; i < level.n; ++i) {
      const Vec2 jitter{rng.uniform(-0.1, 0.1) * K, rng.uniform(-0.1, 0.1) * K};
      fine[i] = x[level.to_coarse[i]] + jitter;
    }
    x = std::move(fine);
    lp.K = l == 0 ? p.K : K;
    r = refine_layout(x, level.edges, lp);
    out.iterations += r.iterations;
  }
  out.final_max_displacement = r.final_max_displacement;
  out.positions = std::move(x);
  return out;
}

}  // namespace

double layout_energy_exact(std::span<const Vec2> positions, std::span<const GraphEdge> edges, const LayoutParams& p) {
  return attractive_energy(positions, edges, p.K) + repulsive_energy_exact(positions, repulsion_of(p));
}

RefineResult refine_layout(std::span<Vec2> positions, std::span<const GraphEdge> edges, const LayoutParams& p,
                           const LayoutObserver& observer) {
  p.validate();
  RefineResult result;
  const std::size_t n = positions.size();
  if (n <= 1) {
    result.converged = true;
    return result;
  }
  // Work relative to an integer origin near the centroid: the dynamics only ever see
  // relative coordinates, so translated inputs follow the same trajectory.
  Vec2 c{0, 0};
  for (const auto& v : positions) c += v;
  const Vec2 origin{std::round(c.x / static_cast<double>(n)), std::round(c.y / static_cast<double>(n))};
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) throw NonFiniteError("non-finite initial position");
  for (auto& v : positions) v -= origin;
  std::vector<Vec2> shown;
  auto notify = [&](bool accepted) {
    shown.assign(positions.begin(), positions.end());
    for (auto& v : shown) v += origin;
    observer(shown, accepted);
  };

  const Repulsion rep = repulsion_of(p);
  const bool exact = n <= p.exact_energy_limit;
  auto energy = [&](std::span<const Vec2> x) {
    const double r = exact ? repulsive_energy_exact(x, rep) : repulsive_energy_quadtree(x, rep, p.theta);
    return attractive_energy(x, edges, p.K) + r;
  };

  double step = p.initial_step * p.K;
  double E = energy(positions);
  std::size_t progress = 0;
  std::vector<Vec2> trial(n);
  while (result.iterations < p.max_iter) {
    std::vector<Vec2> f = repulsive_forces_quadtree(positions, rep, p.theta);
    add_attraction(positions, edges, p.K, f);
    for (std::size_t i = 0; i < n; ++i) {
      const double m = f[i].norm();
      trial[i] = m > 0 && std::isfinite(m) ? positions[i] + (step / m) * f[i] : positions[i];
    }
    const double trial_E = energy(trial);
    const bool accepted = trial_E <= E;
    const double used = step;
    if (accepted) {
      std::copy(trial.begin(), trial.end(), positions.begin());
      E = trial_E;
      result.final_max_displacement = used;
      if (++progress >= p.growth_after) {
        progress = 0;
        step /= p.step_ratio;
      }
    } else {
      progress = 0;
      step *= p.step_ratio;
    }
    ++result.iterations;
    if (observer) notify(accepted);
    if (step < p.tol * p.K) {
      result.converged = true;
      break;
    }
  }
  for (auto& v : positions) v += origin;
  return result;
}

Layout yifan_hu_layout(std::size_t node_count, std::span<const GraphEdge> edges, const LayoutParams& p) {
  p.validate();
  if (node_count == 0) throw ArgumentError("layout needs at least one node");
  for (const auto& e : edges) {
    if (e.u >= node_count || e.v >= node_count) throw ArgumentError("edge endpoint out of range");
    if (!std::isfinite(e.weight)) throw NonFiniteError("non-finite edge weight");
  }

  // Connected components via union-find; each is laid out on its own.
  std::vector<std::size_t> parent(node_count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& e : edges) parent[find(e.u)] = find(e.v);
  std::map<std::size_t, std::size_t> comp_of_root;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < node_count; ++i) {
    auto [it, fresh] = comp_of_root.try_emplace(find(i), members.size());
    if (fresh) members.emplace_back();
    members[it->second].push_back(i);
  }
  std::vector<std::size_t> local(node_count);
  for (const auto& m : members) {
    for (std::size_t k = 0; k < m.size(); ++k) local[m[k]] = k;
  }
  std::vector<std::vector<GraphEdge>> comp_edges(members.size());
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    comp_edges[comp_of_root[find(e.u)]].push_back({local[e.u], local[e.v], e.weight});
  }

  Layout out;
  out.params = p;
  out.positions.assign(node_count, Vec2{});
  std::vector<ComponentLayout> parts(members.size());
  for (std::size_t c = 0; c < members.size(); ++c) {
    parts[c] = multilevel(members[c].size(), std::move(comp_edges[c]), p, p.seed + c);
    out.iterations += parts[c].iterations;
    out.final_max_displacement = std::max(out.final_max_displacement, parts[c].final_max_displacement);
  }

  if (members.size() == 1) {
    out.levels = parts[0].levels;
    for (std::size_t k = 0; k < members[0].size(); ++k) out.positions[members[0][k]] = parts[0].positions[k];
    return out;
  }

  // Grid packing, largest component first.
  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return members[a].size() > members[b].size(); });
  out.levels = parts[order[0]].levels;
  std::vector<Vec2> centers(members.size());
  double cell = 0.0;
  for (std::size_t c = 0; c < members.size(); ++c) {
    Vec2 lo{INFINITY, INFINITY}, hi{-INFINITY, -INFINITY};
    for (const auto& v : parts[c].positions) {
      lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
      hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
    }
    centers[c] = 0.5 * (lo + hi);
    cell = std::max({cell, hi.x - lo.x, hi.y - lo.y});
  }
  cell += 2.0 * p.K;
  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(members.size()))));
  for (std::size_t slot = 0; slot < order.size(); ++slot) {
    const std::size_t c = order[slot];
    const Vec2 target{static_cast<double>(slot % cols) * cell, -static_cast<double>(slot / cols) * cell};
    for (std::size_t k = 0; k < members[c].size(); ++k)
      out.positions[members[c][k]] = parts[c].positions[k] - centers[c] + target;
  }
  return out;
}

Layout yifan_hu_layout(const HashtagGraph& graph, const LayoutParams& p) {
  return yifan_hu_layout(graph.size(), graph.edges, p);
}

}  // namespace hatepol
