#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "minimax/problems.hpp"

using namespace minimax;

namespace {
Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) out[i++] = d;
  return out;
}
}  // namespace

TEST(Problems, DefaultQuadraticConstants) {
  const MinimaxProblem q = make_default_quadratic();
  // Joint Hessian blocks [[1,1],[1,-1]] and [[-3,1],[1,-1]]; the largest |eigenvalue| is 2 + sqrt(2).
  EXPECT_NEAR(q.constants.ell, 2.0 + std::sqrt(2.0), 1e-9);
  EXPECT_DOUBLE_EQ(q.constants.mu, 1.0);
  EXPECT_DOUBLE_EQ(q.constants.diameter_D, 20.0);
  EXPECT_FALSE(q.phi_min().has_value());
}

TEST(Problems, QuadraticPhiClosedForm) {
  const MinimaxProblem q = make_default_quadratic();
  // Inside the ball y* = x, so Phi = x1^2 - x2^2.
  const Vector x = vec({0.7, -1.3});
  EXPECT_NEAR(q.ground_truth->phi(x), 0.49 - 1.69, 1e-12);
  const Vector g = q.ground_truth->grad_phi(x);
  EXPECT_NEAR(g[0], 1.4, 1e-12);
  EXPECT_NEAR(g[1], 2.6, 1e-12);
  EXPECT_NEAR((q.ground_truth->y_star(x) - x).norm(), 0.0, 1e-15);
  // Outside: y* is the radial projection of x.
  const Vector far = vec({30, 40});
  const Vector ys = q.ground_truth->y_star(far);
  EXPECT_NEAR(ys[0], 6.0, 1e-12);
  EXPECT_NEAR(ys[1], 8.0, 1e-12);
  EXPECT_NEAR(q.ground_truth->phi(far), q.value(far, ys), 1e-9);
}

TEST(Problems, BilinearBoxGroundTruth) {
  const MinimaxProblem b = make_bilinear_box(1.0, 1);
  EXPECT_DOUBLE_EQ(b.ground_truth->phi(vec({-0.4})), 0.4);
  EXPECT_DOUBLE_EQ(b.ground_truth->moreau_grad(vec({0.2}))[0], 0.4);
  EXPECT_DOUBLE_EQ(b.ground_truth->moreau_grad(vec({3.0}))[0], 1.0);
  // Huber: x^2 for |x| <= 1/2, |x| - 1/4 beyond.
  EXPECT_DOUBLE_EQ(b.ground_truth->moreau_value(vec({0.3})), 0.09);
  EXPECT_DOUBLE_EQ(b.ground_truth->moreau_value(vec({1.0})), 0.75);
  EXPECT_EQ(*b.phi_min(), 0.0);
}

TEST(Problems, QuadraticRejectsAsymmetricA) {
  Matrix A(2, 2);
  A << 1, 2, 0, 1;
  EXPECT_THROW(make_quadratic_nsc(A, Matrix::Identity(2, 2), 1.0, 1.0), ContractViolation);
  EXPECT_THROW(make_quadratic_nsc(Matrix::Identity(2, 2), Matrix::Identity(2, 2), 0.0, 1.0), InvalidParameter);
}

TEST(Problems, RobustRegressionGradientsMatchFiniteDifferences) {
  const RegressionData data = default_regression_data();
  const MinimaxProblem p = make_robust_regression(data.features, data.targets, 5.0, 0.5);
  RngState rng = make_rng(5);
  std::normal_distribution<double> n(0.0, 0.5);
  for (int k = 0; k < 5; ++k) {
    Vector x(p.dim_x);
    for (int i = 0; i < p.dim_x; ++i) x[i] = n(rng);
    const Vector y = p.constraint.sample(rng);
    const Vector gx = p.grad_x(x, y), gy = p.grad_y(x, y);
    const double h = 1e-6;
    for (int i = 0; i < p.dim_x; ++i) {
      Vector e = Vector::Zero(p.dim_x);
      e[i] = h;
      EXPECT_NEAR((p.value(x + e, y) - p.value(x - e, y)) / (2 * h), gx[i], 1e-6);
    }
    for (int i = 0; i < p.dim_y; i += 7) {
      Vector e = Vector::Zero(p.dim_y);
      e[i] = h;
      EXPECT_NEAR((p.value(x, y + e) - p.value(x, y - e)) / (2 * h), gy[i], 1e-6);
    }
  }
  EXPECT_GT(p.constants.mu, 0.0);
  EXPECT_LE(p.constants.mu, p.constants.ell);
}

TEST(Problems, RobustRegressionRejectsWeakRegularizer) {
  const RegressionData data = default_regression_data();
  EXPECT_THROW(make_robust_regression(data.features, data.targets, 0.01, 0.1), InvalidParameter);
}

TEST(Problems, RegressionCsvRoundTrip) {
  const RegressionData data = synthetic_regression_data(6, 3, 42);
  const auto path = std::filesystem::temp_directory_path() / "minimax_regression_roundtrip.csv";
  save_regression_csv(data, path.string());
  const RegressionData back = load_regression_csv(path.string());
  EXPECT_EQ(back.features, data.features);
  EXPECT_EQ(back.targets, data.targets);
}

TEST(Problems, InRepoDatasetMatchesGenerator) {
  const RegressionData disk = load_regression_csv(std::string(MINIMAX_DATA_DIR) + "/robust_regression.csv");
  const RegressionData gen = default_regression_data();
  EXPECT_EQ(disk.features, gen.features);
  EXPECT_EQ(disk.targets, gen.targets);
}

TEST(Problems, SpectralNormPower) {
  Matrix H(2, 2);
  H << 2, 1, 1, 2;
  EXPECT_NEAR(spectral_norm_power(H), 3.0, 1e-9);
  H << -5, 0, 0, 1;
  EXPECT_NEAR(spectral_norm_power(H), 5.0, 1e-9);
}
