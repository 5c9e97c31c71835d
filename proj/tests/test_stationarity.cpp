#include <gtest/gtest.h>

#include <cmath>

#include "minimax/problems.hpp"
#include "minimax/stationarity.hpp"

using namespace minimax;

namespace {
Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) out[i++] = d;
  return out;
}

// The same problem with every closed form removed, so the numeric paths run.
MinimaxProblem numeric(MinimaxProblem p) {
  p.ground_truth.reset();
  return p;
}
}  // namespace

TEST(Stationarity, NumericPhiMatchesClosedForm) {
  const MinimaxProblem q = make_default_quadratic();
  const MinimaxProblem n = numeric(q);
  for (const Vector& x : {vec({0.7, -1.3}), vec({20, 5}), vec({-3, 0})}) {
    const PhiValue v = eval_phi(n, x, 1e-12);
    EXPECT_NEAR(v.phi, q.ground_truth->phi(x), 1e-9);
    EXPECT_LE(v.phi, q.ground_truth->phi(x) + 1e-12);
    EXPECT_NEAR((grad_phi(n, x, 1e-10) - q.ground_truth->grad_phi(x)).norm(), 0.0, 1e-8);
  }
}

TEST(Stationarity, NumericMoreauOnQuadratic) {
  const MinimaxProblem n = numeric(make_default_quadratic());
  const double l = n.constants.ell;
  const Vector x = vec({0.5, 0.3});
  // argmin_w w1^2 - w2^2 + l |w - x|^2: w1 = l x1 / (1 + l), w2 = l x2 / (l - 1).
  const Vector g = moreau_grad(n, x, 1e-10);
  EXPECT_NEAR(g[0], 2 * l * x[0] / (1 + l), 1e-6);
  EXPECT_NEAR(g[1], -2 * l * x[1] / (l - 1), 1e-6);
  const double w1 = l * x[0] / (1 + l), w2 = l * x[1] / (l - 1);
  const double want = w1 * w1 - w2 * w2 + l * ((w1 - x[0]) * (w1 - x[0]) + (w2 - x[1]) * (w2 - x[1]));
  EXPECT_NEAR(moreau_value(n, x, 1e-10), want, 1e-8);
}

TEST(Stationarity, BilinearEnvelopeBothPaths) {
  const MinimaxProblem b = make_bilinear_box(1.0, 1);
  for (double x : {-2.0, -0.5, -0.1, 0.0, 0.25, 0.6, 3.0}) {
    const double want = std::clamp(2 * x, -1.0, 1.0);
    EXPECT_NEAR(moreau_grad(b, vec({x}), 1e-12, ProxMethod::Direct)[0], want, 1e-6) << x;
    EXPECT_NEAR(moreau_grad(b, vec({x}), 1e-9, ProxMethod::Extragradient)[0], want, 1e-5) << x;
  }
}

TEST(Stationarity, EnvelopeSmoothnessHalfEllBoundFails) {
  // Phi_{1/2l} is the Huber function: Phi(0.5) - Phi(0) - grad(0) * 0.5 = 0.25,
  // above (l/2) * 0.25 = 0.125 and equal to l * 0.25.
  const MinimaxProblem b = make_bilinear_box(1.0, 1);
  const double l = b.constants.ell;
  const double rem = moreau_value(b, vec({0.5}), 1e-12) - moreau_value(b, vec({0.0}), 1e-12) -
                     moreau_grad(b, vec({0.0}), 1e-12)[0] * 0.5;
  EXPECT_NEAR(rem, 0.25, 1e-12);
  EXPECT_GT(rem, 0.5 * l * 0.25);
  EXPECT_LE(rem, l * 0.25 + 1e-12);
}

TEST(Stationarity, JointResidualsAtSaddle) {
  const MinimaxProblem q = make_default_quadratic();
  const JointResiduals r = check_joint_stationarity(q, vec({0, 0}), vec({0, 0}));
  EXPECT_EQ(r.gx_norm, 0.0);
  EXPECT_EQ(r.y_residual, 0.0);
  const JointResiduals s = check_joint_stationarity(q, vec({1, 0}), vec({0, 0}));
  EXPECT_DOUBLE_EQ(s.gx_norm, 1.0);
  EXPECT_NEAR(s.y_residual, 1.0 / q.constants.ell, 1e-15);
}

TEST(Stationarity, TranslationsHold) {
  const MinimaxProblem q = make_default_quadratic();
  const Translation t = translate_phi_to_joint(q, vec({2.5e-4, -2.5e-4}), 1e-3);
  EXPECT_TRUE(t.within_bounds);
  EXPECT_LE(t.residuals.gx_norm, t.bound_gx);
  const StationarityReport r = check_converse_translation(q, t.x, t.y);
  EXPECT_TRUE(r.holds);

  const MinimaxProblem b = make_bilinear_box(1.0, 1);
  const Translation tb = translate_phi_to_joint(b, vec({0.05}), 0.2);
  EXPECT_TRUE(tb.within_bounds);
  const StationarityReport rb = check_converse_translation(b, vec({0.05}), vec({1.0}));
  EXPECT_TRUE(rb.holds);
  EXPECT_LE(rb.epsilon_achieved, rb.bound);
}

TEST(Stationarity, AnnotateFillsDiagnostics) {
  const MinimaxProblem q = make_default_quadratic();
  SolverConfig c;
  c.eta_x = 0.01;
  c.eta_y = 0.2;
  c.horizon_T = 20;
  IterateTrace tr = run_gda(q, c, vec({1, 1}), vec({0, 0}));
  DiagnosticsOptions o;
  o.stride = 5;
  annotate_trace(tr, q, o);
  const IterateRecord& r = *tr.find(10);
  EXPECT_NEAR(r.diag.phi, q.ground_truth->phi(r.x), 1e-12);
  EXPECT_NEAR(r.diag.delta, (q.ground_truth->y_star(r.x) - r.y).squaredNorm(), 1e-12);
  EXPECT_NEAR(r.diag.gap, r.diag.phi - r.f_val, 1e-12);
  EXPECT_TRUE(std::isnan(tr.find(11)->diag.phi));
}

TEST(Stationarity, DefaultStride) {
  EXPECT_EQ(default_stride(100), 1);
  EXPECT_EQ(default_stride(10'000), 1);
  EXPECT_EQ(default_stride(1'000'000), 100);
}
