#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace hatepol {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2& operator+=(Vec2 o) noexcept { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) noexcept { x -= o.x; y -= o.y; return *this; }
  friend Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) noexcept { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
  double norm() const noexcept { return std::hypot(x, y); }
};

// Pairwise repulsion f(d) = C·K^(1+p)/d^p pushing points apart, with its
// potential φ(d) (ln(1/d)·C·K² for p = 1).
struct Repulsion {
  double K = 1.0;
  double C = 0.2;
  double exponent = 1.0;

  double magnitude(double d) const noexcept;
  double potential(double d) const noexcept;
};

// Barnes-Hut quadtree over a fixed point set. A cell is summarised by its
// centroid when width/distance < theta and it does not contain the query.
class QuadTree {
 public:
  explicit QuadTree(std::span<const Vec2> points);

  Vec2 force_on(std::size_t i, const Repulsion& r, double theta) const;
  // Σ_{j≠i} φ(d_ij), approximated the same way.
  double potential_at(std::size_t i, const Repulsion& r, double theta) const;

 private:
  struct Cell {
    double cx, cy, half;
    Vec2 centroid;
    std::size_t mass = 0;
    int child[4] = {-1, -1, -1, -1};
    std::vector<std::size_t> members;  // leaves only
  };

  void insert(int cell, std::size_t point, int depth);
  bool contains(const Cell& c, Vec2 p) const noexcept;
  template <class Leaf, class Far>
  void visit(std::size_t i, double theta, Leaf&& leaf, Far&& far) const;

  std::span<const Vec2> pts_;
  std::vector<Cell> cells_;
};

std::vector<Vec2> repulsive_forces_exact(std::span<const Vec2> points, const Repulsion& r);
std::vector<Vec2> repulsive_forces_quadtree(std::span<const Vec2> points, const Repulsion& r, double theta);
std::vector<Vec2> repulsive_forces_quadtree_serial(std::span<const Vec2> points, const Repulsion& r, double theta);

double repulsive_energy_exact(std::span<const Vec2> points, const Repulsion& r);
double repulsive_energy_quadtree(std::span<const Vec2> points, const Repulsion& r, double theta);

}  // namespace hatepol
