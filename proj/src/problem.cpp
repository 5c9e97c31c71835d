#include "minimax/problem.hpp"

#include <cmath>

namespace minimax {

void MinimaxProblem::check_point(const Vector& x, const Vector& y) const {
  if (x.size() != dim_x) {
    throw ContractViolation("x has dimension " + std::to_string(x.size()) + ", problem expects " +
                            std::to_string(dim_x));
  }
  if (y.size() != dim_y) {
    throw ContractViolation("y has dimension " + std::to_string(y.size()) + ", problem expects " +
                            std::to_string(dim_y));
  }
}

BatchGradient sample_batch_gradient(const StochasticOracle& oracle, const Vector& x, const Vector& y,
                                    long long M, RngState& rng) {
  if (M < 1) throw ContractViolation("batch size must be >= 1");
  const MinimaxProblem& p = oracle.base;
  BatchGradient g{p.grad_x(x, y), p.grad_y(x, y)};
  if (oracle.noise_sigma == 0.0) return g;

  const double sx = oracle.noise_sigma / std::sqrt(static_cast<double>(p.dim_x));
  const double sy = oracle.noise_sigma / std::sqrt(static_cast<double>(p.dim_y));
  Vector nx = Vector::Zero(p.dim_x);
  Vector ny = Vector::Zero(p.dim_y);
  for (long long i = 0; i < M; ++i) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int j = 0; j < p.dim_x; ++j) nx[j] += sx * normal(rng);
    for (int j = 0; j < p.dim_y; ++j) ny[j] += sy * normal(rng);
  }
  const double inv = 1.0 / static_cast<double>(M);
  g.gx += nx * inv;
  g.gy += ny * inv;
  return g;
}

MinimaxProblem regularized(const MinimaxProblem& problem, const Vector& anchor, double weight) {
  MinimaxProblem r = problem;
  r.name = problem.name + "+prox";
  auto value = problem.value;
  auto gx = problem.grad_x;
  r.value = [value, anchor, weight](const Vector& x, const Vector& y) {
    return value(x, y) + weight * (x - anchor).squaredNorm();
  };
  r.grad_x = [gx, anchor, weight](const Vector& x, const Vector& y) -> Vector {
    return gx(x, y) + 2.0 * weight * (x - anchor);
  };
  r.constants.ell = problem.constants.ell + 2.0 * weight;
  r.constants.lip_L = 0.0;
  r.ground_truth.reset();
  return r;
}

}  // namespace minimax
