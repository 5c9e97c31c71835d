#include <gtest/gtest.h>

#include <cmath>

#include "minimax/problems.hpp"
#include "minimax/solvers.hpp"
#include "minimax/stationarity.hpp"

using namespace minimax;

namespace {
Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) out[i++] = d;
  return out;
}

SolverConfig manual(double ex, double ey, long long T) {
  SolverConfig c;
  c.eta_x = ex;
  c.eta_y = ey;
  c.horizon_T = T;
  return c;
}
}  // namespace

TEST(Gda, OneStepMatchesHandComputation) {
  const MinimaxProblem q = make_default_quadratic();
  const double ex = 0.01, ey = 0.25;
  const IterateTrace tr = run_gda(q, manual(ex, ey, 1), vec({1, 1}), vec({0, 0}));
  ASSERT_EQ(tr.records.size(), 2u);
  const IterateRecord& r = tr.records[1];
  // grad_x = A x0 + y0 = (1, -3); grad_y = x0 - y0 = (1, 1).
  EXPECT_DOUBLE_EQ(r.x[0], 1.0 - ex);
  EXPECT_DOUBLE_EQ(r.x[1], 1.0 + 3.0 * ex);
  EXPECT_DOUBLE_EQ(r.y[0], ey);
  EXPECT_DOUBLE_EQ(r.y[1], ey);
}

TEST(Gda, UpdatesAreSimultaneous) {
  // f = xy: y_1 must use x_0, not x_1.
  const MinimaxProblem b = make_bilinear_box(1.0, 1);
  const IterateTrace tr = run_gda(b, manual(0.5, 0.5, 1), vec({0.4}), vec({0.2}));
  EXPECT_DOUBLE_EQ(tr.records[1].x[0], 0.4 - 0.5 * 0.2);
  EXPECT_DOUBLE_EQ(tr.records[1].y[0], 0.2 + 0.5 * 0.4);
}

TEST(Gda, YStaysFeasible) {
  const MinimaxProblem b = make_bilinear_box(1.0, 2);
  const IterateTrace tr = run_gda(b, manual(0.3, 0.9, 200), vec({2, -3}), vec({0, 0}));
  for (const IterateRecord& r : tr.records) EXPECT_TRUE(b.constraint.contains(r.y, 1e-12));
}

TEST(Sgda, ZeroNoiseReproducesGda) {
  const MinimaxProblem q = make_default_quadratic();
  SolverConfig c = manual(0.005, 0.2, 50);
  c.batch_M = 3;
  c.seed = 9;
  const IterateTrace a = run_gda(q, c, vec({1, 1}), vec({0, 0}));
  const IterateTrace s = run_sgda(add_gaussian_noise(q, 0.0), c, vec({1, 1}), vec({0, 0}));
  ASSERT_EQ(a.records.size(), s.records.size());
  for (size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].x, s.records[i].x);
    EXPECT_EQ(a.records[i].y, s.records[i].y);
  }
}

TEST(Sgda, SameSeedSameTrace) {
  const StochasticOracle o = add_gaussian_noise(make_default_quadratic(), 0.5);
  SolverConfig c = manual(0.005, 0.2, 100);
  c.seed = 77;
  const IterateTrace a = run_sgda(o, c, vec({1, 0}), vec({0, 0}));
  const IterateTrace b = run_sgda(o, c, vec({1, 0}), vec({0, 0}));
  EXPECT_EQ(a.records.back().x, b.records.back().x);
  c.seed = 78;
  const IterateTrace d = run_sgda(o, c, vec({1, 0}), vec({0, 0}));
  EXPECT_NE(a.records.back().x, d.records.back().x);
}

TEST(Noise, BatchMeanIsUnbiasedWithVarianceOverM) {
  const MinimaxProblem q = make_default_quadratic();
  const StochasticOracle o = add_gaussian_noise(q, 0.5);
  const Vector x = vec({0.3, -0.2}), y = vec({0.1, 0.4});
  const Vector gx = q.grad_x(x, y);
  RngState rng = make_rng(1);
  const int reps = 4000;
  const long long M = 4;
  Vector mean = Vector::Zero(2);
  double sq = 0.0;
  for (int k = 0; k < reps; ++k) {
    const BatchGradient g = sample_batch_gradient(o, x, y, M, rng);
    mean += g.gx;
    sq += (g.gx - gx).squaredNorm();
  }
  mean /= reps;
  EXPECT_LE((mean - gx).norm(), 0.02);
  // Total variance sigma^2 per block, divided by the batch size.
  EXPECT_NEAR(sq / reps, 0.25 / M, 0.1 * 0.25 / M);
}

TEST(Gda, DivergenceIsReportedNotThrown) {
  const MinimaxProblem q = make_default_quadratic();
  const IterateTrace tr = run_gda(q, manual(1e6, 0.1, 1000), vec({1, 1}), vec({0, 0}));
  ASSERT_TRUE(tr.abort.has_value());
  EXPECT_LT(tr.abort->index, 1000);
  EXPECT_EQ(tr.records.back().t, tr.abort->index);
}

TEST(Gda, RecordStrideKeepsLastIterate) {
  const MinimaxProblem b = make_bilinear_box(1.0, 1);
  SolverConfig c = manual(0.01, 0.5, 25);
  c.record_stride = 10;
  const IterateTrace tr = run_gda(b, c, vec({1}), vec({0}));
  ASSERT_EQ(tr.records.size(), 4u);
  EXPECT_EQ(tr.records[2].t, 20);
  EXPECT_EQ(tr.records[3].t, 25);
}

TEST(Gda, RejectsInfeasibleStart) {
  const MinimaxProblem b = make_bilinear_box(1.0, 1);
  EXPECT_THROW(run_gda(b, manual(0.1, 0.1, 5), vec({0}), vec({2})), ContractViolation);
  EXPECT_THROW(run_gda(b, manual(0.1, 0.1, 5), vec({0, 0}), vec({0})), ContractViolation);
}

TEST(InnerMax, ReachesZetaOnStronglyConcave) {
  const MinimaxProblem q = make_default_quadratic();
  const Vector x = vec({1.0, -2.0});
  const double zeta = 1e-6;
  const InnerMaxResult r = inner_max_ga(q, x, vec({0, 0}), zeta);
  const double best = q.value(x, q.ground_truth->y_star(x));
  EXPECT_LE(best - q.value(x, r.y), zeta);
  EXPECT_GE(best - q.value(x, r.y), 0.0);
}

TEST(InnerMax, ReachesZetaOnConcaveBox) {
  const MinimaxProblem b = make_bilinear_box(1.0, 3);
  const Vector x = vec({0.5, -0.1, 2.0});
  const InnerMaxResult r = inner_max_ga(b, x, vec({0, 0, 0}), 1e-3);
  EXPECT_LE(b.ground_truth->phi(x) - b.value(x, r.y), 1e-3);
}

TEST(InnerMax, BudgetCapThrows) {
  const MinimaxProblem b = make_bilinear_box(1.0, 1);
  InnerMaxOptions o;
  o.iter_cap = 2;
  o.budget = 100;
  // x tiny: the certificate cannot fire within two steps.
  EXPECT_THROW(inner_max_ga(b, vec({1e-9}), vec({-1}), 1e-12, o), BudgetExceeded);
}

TEST(Gdmax, DescendsOnQuadraticWithFeasibleOracle) {
  const MinimaxProblem q = make_default_quadratic();
  SolverConfig c = manual(0.05, 1.0 / q.constants.ell, 30);
  c.zeta = 1e-6;
  const IterateTrace tr = run_gdmax(q, c, vec({1, 0}), vec({0, 0}));
  // From (1, 0): Phi = x1^2 decreases monotonically.
  for (size_t i = 1; i < tr.records.size(); ++i) {
    EXPECT_LT(std::abs(tr.records[i].x[0]), std::abs(tr.records[i - 1].x[0]));
    EXPECT_GT(tr.records[i].inner_grad_evals, 0);
  }
}

TEST(Extragradient, SolvesRegularizedBilinear) {
  const MinimaxProblem b = make_bilinear_box(1.0, 1);
  const Vector anchor = vec({0.9});
  const MinimaxProblem reg = regularized(b, anchor, b.constants.ell);
  const ExtragradientResult r = extragradient_scc(reg, anchor, vec({0}), 1e-9);
  // Prox of |w| + (w - 0.9)^2 is soft-thresholding at 1/2.
  EXPECT_NEAR(r.x[0], 0.4, 1e-8);
  EXPECT_NEAR(r.y[0], 1.0, 1e-8);
}

TEST(SelectOutput, UniformOverOneToT) {
  const MinimaxProblem b = make_bilinear_box(1.0, 1);
  IterateTrace tr = run_gda(b, manual(0.01, 0.5, 10), vec({1}), vec({0}));
  RngState rng = make_rng(4);
  std::vector<int> counts(11, 0);
  for (int k = 0; k < 5000; ++k) {
    const SelectedOutput s = select_output(tr, rng);
    ASSERT_GE(s.index, 1);
    ASSERT_LE(s.index, 10);
    ++counts[s.index];
    EXPECT_EQ(s.x_hat, tr.find(s.index)->x);
  }
  for (int i = 1; i <= 10; ++i) EXPECT_NEAR(counts[i], 500, 100);
  EXPECT_TRUE(tr.selected_index.has_value());
}

TEST(SelectOutput, ThinnedTraceThrows) {
  const MinimaxProblem b = make_bilinear_box(1.0, 1);
  SolverConfig c = manual(0.01, 0.5, 100);
  c.record_stride = 50;
  IterateTrace tr = run_gda(b, c, vec({1}), vec({0}));
  RngState rng = make_rng(4);
  EXPECT_THROW(
      {
        for (int k = 0; k < 50; ++k) select_output(tr, rng);
      },
      ContractViolation);
}
