#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "minimax/constraint_set.hpp"
#include "minimax/types.hpp"

namespace minimax {

struct ProblemConstants {
  double ell = 1.0;    // joint gradient Lipschitz constant
  double lip_L = 0.0;  // Lipschitz constant of f(., y); 0 when not declared
  double mu = 0.0;     // strong concavity in y; 0 = merely concave
  double diameter_D = 0.0;
  double sigma = 0.0;

  double kappa() const { return mu > 0.0 ? ell / mu : std::numeric_limits<double>::infinity(); }
  bool strongly_concave() const { return mu > 0.0; }
};

using ValueFn = std::function<double(const Vector&, const Vector&)>;
using GradFn = std::function<Vector(const Vector&, const Vector&)>;
using ScalarOfX = std::function<double(const Vector&)>;
using VectorOfX = std::function<Vector(const Vector&)>;

// Ground truth where a problem knows it in closed form.
struct ClosedFormOracles {
  ScalarOfX phi;
  VectorOfX grad_phi;
  VectorOfX y_star;
  VectorOfX moreau_grad;
  ScalarOfX moreau_value;  // Phi_{1/2l}(x)
  std::optional<double> phi_min;
};

struct MinimaxProblem {
  std::string name;
  int dim_x = 0;
  int dim_y = 0;
  ValueFn value;
  GradFn grad_x;
  GradFn grad_y;
  ProblemConstants constants;
  ConstraintSet constraint;
  std::optional<ClosedFormOracles> ground_truth;

  bool has_phi() const { return ground_truth && static_cast<bool>(ground_truth->phi); }
  bool has_grad_phi() const { return ground_truth && static_cast<bool>(ground_truth->grad_phi); }
  bool has_y_star() const { return ground_truth && static_cast<bool>(ground_truth->y_star); }
  bool has_moreau() const {
    return ground_truth && ground_truth->moreau_grad && ground_truth->moreau_value;
  }
  std::optional<double> phi_min() const {
    return ground_truth ? ground_truth->phi_min : std::nullopt;
  }

  // Throws ContractViolation on wrong dimensions.
  void check_point(const Vector& x, const Vector& y) const;
};

// Additive isotropic Gaussian noise on both gradient blocks, total variance
// sigma^2 per block.
struct StochasticOracle {
  MinimaxProblem base;
  double noise_sigma = 0.0;
};

struct BatchGradient {
  Vector gx;
  Vector gy;
};

// Mean of M independent draws of (G_x, G_y). One draw supplies the noise for
// both blocks, so the same batch serves x and y.
BatchGradient sample_batch_gradient(const StochasticOracle& oracle, const Vector& x, const Vector& y,
                                    long long M, RngState& rng);

// The same problem, with the regularizer l_reg * ||x - anchor||^2 added.
MinimaxProblem regularized(const MinimaxProblem& problem, const Vector& anchor, double weight);

}  // namespace minimax
