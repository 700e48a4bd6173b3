#include "hatepol/quadtree.hpp"

#include <algorithm>
#include <limits>

namespace hatepol {

namespace {

constexpr int kMaxDepth = 48;

}  // namespace

double Repulsion::magnitude(double d) const noexcept {
  if (exponent == 1.0) return C * K * K / d;
  return C * std::pow(K, 1.0 + exponent) / std::pow(d, exponent);
}

double Repulsion::potential(double d) const noexcept {
  if (exponent == 1.0) return -C * K * K * std::log(d);
  return C * std::pow(K, 1.0 + exponent) * std::pow(d, 1.0 - exponent) / (exponent - 1.0);
}

QuadTree::QuadTree(std::span<const Vec2> points) : pts_(points) {
  if (points.empty()) return;
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  for (const auto& p : points) {
    lo_x = std::min(lo_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_x = std::max(hi_x, p.x);
    hi_y = std::max(hi_y, p.y);
  }
  double half = 0.5 * std::max(hi_x - lo_x, hi_y - lo_y);
  half = half > 0 ? half * (1.0 + 1e-9) : 1.0;
  cells_.reserve(points.size() * 2);
  cells_.push_back({0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y), half, {}, 0, {-1, -1, -1, -1}, {}});
  for (std::size_t i = 0; i < points.size(); ++i) insert(0, i, 0);
  for (auto& c : cells_) c.centroid = (1.0 / static_cast<double>(c.mass)) * c.centroid;
}

void QuadTree::insert(int cell, std::size_t point, int depth) {
  const Vec2 p = pts_[point];
  for (;;) {
    Cell& c = cells_[static_cast<std::size_t>(cell)];
    c.centroid += p;
    ++c.mass;
    const bool leaf = c.child[0] < 0 && c.child[1] < 0 && c.child[2] < 0 && c.child[3] < 0;
    if (leaf && (c.members.empty() || depth >= kMaxDepth)) {
      c.members.push_back(point);
      return;
    }
    if (leaf) {
      // Split: push the resident points one level down before continuing.
      auto residents = std::move(c.members);
      c.members.clear();
      for (std::size_t r : residents) {
        Cell& cc = cells_[static_cast<std::size_t>(cell)];
        const Vec2 q = pts_[r];
        const int slot = (q.x >= cc.cx ? 1 : 0) + (q.y >= cc.cy ? 2 : 0);
        if (cc.child[slot] < 0) {
          const double h = cc.half * 0.5;
          Cell child{cc.cx + ((slot & 1) ? h : -h), cc.cy + ((slot & 2) ? h : -h), h, {}, 0, {-1, -1, -1, -1}, {}};
          const int idx = static_cast<int>(cells_.size());
          cells_[static_cast<std::size_t>(cell)].child[slot] = idx;
          cells_.push_back(std::move(child));
        }
        const int target = cells_[static_cast<std::size_t>(cell)].child[slot];
        Cell& t = cells_[static_cast<std::size_t>(target)];
        t.centroid += q;
        ++t.mass;
        t.members.push_back(r);
      }
    }
    Cell& cc = cells_[static_cast<std::size_t>(cell)];
    const int slot = (p.x >= cc.cx ? 1 : 0) + (p.y >= cc.cy ? 2 : 0);
    if (cc.child[slot] < 0) {
      const double h = cc.half * 0.5;
      Cell child{cc.cx + ((slot & 1) ? h : -h), cc.cy + ((slot & 2) ? h : -h), h, {}, 0, {-1, -1, -1, -1}, {}};
      const int idx = static_cast<int>(cells_.size());
      cells_[static_cast<std::size_t>(cell)].child[slot] = idx;
      cells_.push_back(std::move(child));
    }
    cell = cells_[static_cast<std::size_t>(cell)].child[slot];
    ++depth;
  }
}

bool QuadTree::contains(const Cell& c, Vec2 p) const noexcept {
  return p.x >= c.cx - c.half && p.x <= c.cx + c.half && p.y >= c.cy - c.half && p.y <= c.cy + c.half;
}

template <class Leaf, class Far>
void QuadTree::visit(std::size_t i, double theta, Leaf&& leaf, Far&& far) const {
  if (cells_.empty()) return;
  const Vec2 p = pts_[i];
  int stack[4 * kMaxDepth + 8];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Cell& c = cells_[static_cast<std::size_t>(stack[--top])];
    if (!c.members.empty()) {
      for (std::size_t j : c.members) {
        if (j != i) leaf(j);
      }
      continue;
    }
    const double d = (c.centroid - p).norm();
    if (!contains(c, p) && d > 0 && 2.0 * c.half / d < theta) {
      far(c.centroid, static_cast<double>(c.mass));
      continue;
    }
    for (int k : c.child) {
      if (k >= 0) stack[top++] = k;
    }
  }
}

Vec2 QuadTree::force_on(std::size_t i, const Repulsion& r, double theta) const {
  const Vec2 p = pts_[i];
  Vec2 f;
  auto add = [&](Vec2 q, double mass) {
    const Vec2 delta = p - q;
    const double d = delta.norm();
    if (d > 0) f += (mass * r.magnitude(d) / d) * delta;
  };
  visit(i, theta, [&](std::size_t j) { add(pts_[j], 1.0); }, add);
  return f;
}

double QuadTree::potential_at(std::size_t i, const Repulsion& r, double theta) const {
  const Vec2 p = pts_[i];
  double e = 0.0;
  auto add = [&](Vec2 q, double mass) {
    const double d = (p - q).norm();
    if (d > 0) e += mass * r.potential(d);
  };
  visit(i, theta, [&](std::size_t j) { add(pts_[j], 1.0); }, add);
  return e;
}

std::vector<Vec2> repulsive_forces_exact(std::span<const Vec2> points, const Repulsion& r) {
  std::vector<Vec2> f(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const Vec2 delta = points[i] - points[j];
      const double d = delta.norm();
      if (d <= 0) continue;
      const Vec2 push = (r.magnitude(d) / d) * delta;
      f[i] += push;
      f[j] -= push;
    }
  }
  return f;
}

std::vector<Vec2> repulsive_forces_quadtree(std::span<const Vec2> points, const Repulsion& r, double theta) {
  const QuadTree tree(points);
  std::vector<Vec2> f(points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) f[static_cast<std::size_t>(i)] = tree.force_on(static_cast<std::size_t>(i), r, theta);
  return f;
}

std::vector<Vec2> repulsive_forces_quadtree_serial(std::span<const Vec2> points, const Repulsion& r, double theta) {
  const QuadTree tree(points);
  std::vector<Vec2> f(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) f[i] = tree.force_on(i, r, theta);
  return f;
}

double repulsive_energy_exact(std::span<const Vec2> points, const Repulsion& r) {
  double e = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = (points[i] - points[j]).norm();
      if (d > 0) e += r.potential(d);
    }
  }
  return e;
}

double repulsive_energy_quadtree(std::span<const Vec2> points, const Repulsion& r, double theta) {
  const QuadTree tree(points);
  double e = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static) reduction(+ : e)
  for (std::ptrdiff_t i = 0; i < n; ++i) e += tree.potential_at(static_cast<std::size_t>(i), r, theta);
  return 0.5 * e;
}

}  // namespace hatepol
