#pragma once

#include <string>

#include "minimax/problem.hpp"

namespace minimax {

// f(x,y) = 1/2 x'Ax + x'By - mu/2 |y|^2 over the ball of the given radius.
MinimaxProblem make_quadratic_nsc(const Matrix& A, const Matrix& B, double mu, double radius);

// The instance used throughout the tests: A = diag(1,-3), B = I, mu = 1, R = 10.
MinimaxProblem make_default_quadratic();

// f(x,y) = scale * x'y over [-1,1]^dim.
MinimaxProblem make_bilinear_box(double scale, int dim);

struct RegressionData {
  Matrix features;  // N x d
  Vector targets;   // N
};

struct RobustRegressionOptions {
  // Region over which constants and the concavity certificate are checked.
  double weight_radius = 2.0;
  int probe_points = 64;
  std::uint64_t probe_seed = 7;
  double concavity_margin = 0.1;
};

// (1/N) sum_i max_{y_i in ball(xi_i, r)} 1/2 (tanh(w'y_i) - t_i)^2 - gamma |y_i - xi_i|^2.
MinimaxProblem make_robust_regression(const Matrix& features, const Vector& targets, double gamma,
                                      double perturb_radius, const RobustRegressionOptions& options = {});

// Teacher-student data: xi ~ N(0, I), t = tanh(w*'xi) + 0.1 noise.
RegressionData synthetic_regression_data(int n, int d, std::uint64_t seed);
// The in-repo fixture: N = 32, d = 4.
RegressionData default_regression_data();
inline constexpr std::uint64_t kRegressionSeed = 1906;
RegressionData load_regression_csv(const std::string& path);
void save_regression_csv(const RegressionData& data, const std::string& path);

StochasticOracle add_gaussian_noise(const MinimaxProblem& problem, double sigma);

// Largest singular value of a symmetric matrix by power iteration on H^2.
double spectral_norm_power(const Matrix& H, double tol = 1e-10, int max_iters = 100000);

}  // namespace minimax
