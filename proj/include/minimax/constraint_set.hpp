#pragma once

#include "minimax/types.hpp"

namespace minimax {

// Closed convex feasible set for the y-block.
class ConstraintSet {
 public:
  enum class Kind { Box, Ball, Simplex, ProductOfBalls };

  static ConstraintSet box(Vector lo, Vector hi);
  static ConstraintSet box(int dim, double lo, double hi);
  static ConstraintSet ball(Vector center, double radius);
  static ConstraintSet simplex(int dim);
  // N balls of equal radius, each of dimension block_dim; centers is N x block_dim.
  static ConstraintSet product_of_balls(Matrix centers, double radius);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  Vector project(const Vector& y) const;
  bool contains(const Vector& y, double tol = 1e-12) const;
  double diameter() const;
  // A deterministic feasible point (center of the set).
  Vector center() const;
  // Uniform-ish random feasible point, used by samplers.
  Vector sample(RngState& rng) const;

  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }
  double radius() const { return radius_; }
  const Matrix& centers() const { return centers_; }

 private:
  Kind kind_ = Kind::Box;
  int dim_ = 0;
  Vector lo_, hi_;
  Matrix centers_;  // Ball: 1 x dim; ProductOfBalls: N x block_dim
  double radius_ = 0.0;
};

Vector project_simplex(const Vector& v);

}  // namespace minimax
