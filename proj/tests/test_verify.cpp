#include <gtest/gtest.h>

#include <cmath>

#include "minimax/problems.hpp"
#include "minimax/suites.hpp"
#include "minimax/verify.hpp"

using namespace minimax;

TEST(Verify, FiniteDiffCheckDetectsWrongGradient) {
  const ScalarOfX f = [](const Vector& x) { return x.squaredNorm(); };
  const VectorOfX good = [](const Vector& x) -> Vector { return 2 * x; };
  const VectorOfX bad = [](const Vector& x) -> Vector { return 3 * x; };
  Vector x(2);
  x << 1.0, -2.0;
  EXPECT_LE(finite_diff_check(f, good, x, 1e-5), 1e-8);
    // Worst coordinate: |(-6) - (-4)| / (1 + 6).
  EXPECT_NEAR(finite_diff_check(f, bad, x, 1e-5), 2.0 / 7.0, 1e-8);
}

TEST(Verify, ConstantEstimatesStayBelowDeclared) {
  const MinimaxProblem q = make_default_quadratic();
  RngState rng = make_rng(2);
  const ConstantEstimates e = estimate_constants(q, 200, rng, SamplingRegion{3.0});
  EXPECT_LE(e.ell_hat, q.constants.ell * (1 + 1e-6));
  EXPECT_GT(e.ell_hat, 0.5 * q.constants.ell);
  EXPECT_GE(e.mu_hat, q.constants.mu * (1 - 1e-6));
}

TEST(Verify, YStarLipschitz) {
  RngState rng = make_rng(3);
  const AuditResult a = check_ystar_lipschitz(make_default_quadratic(), 500, rng, SamplingRegion{20.0});
  EXPECT_TRUE(a.passed) << a.lhs << " " << a.rhs;
}

TEST(Verify, WeakConvexityPassesAtEllFailsAtTenth) {
  const MinimaxProblem q = make_default_quadratic();
  RngState rng = make_rng(4);
  EXPECT_TRUE(check_weak_convexity(q, 300, rng).passed);
  WeakConvexityOptions o;
  o.modulus = q.constants.ell / 10.0;
  RngState rng2 = make_rng(4);
  EXPECT_FALSE(check_weak_convexity(q, 300, rng2, o).passed);
}

TEST(Verify, NscAuditsPassOnReferenceRun) {
  const MinimaxProblem q = make_default_quadratic();
  const IterateTrace tr = nsc_gda_reference_trace();
  EXPECT_TRUE(audit_nsc_descent(tr, q).passed);
  EXPECT_TRUE(audit_nsc_delta_recursion(tr, q).passed);
  EXPECT_TRUE(audit_rate_bound(tr, q, BoundKind::NcScGda, RateAuditOptions{}).passed);
}

TEST(Verify, TenfoldStepsizeFaultIsCaught) {
  const MinimaxProblem q = make_default_quadratic();
  SuiteOptions o;
  o.stepsize_multiplier = 10.0;
  const IterateTrace tr = nsc_gda_reference_trace(o);
  const bool caught = !audit_nsc_descent(tr, q).passed || !audit_nsc_delta_recursion(tr, q).passed;
  EXPECT_TRUE(caught);
}

TEST(Verify, RateAuditNeedsEveryIterate) {
  const MinimaxProblem q = make_default_quadratic();
  SuiteOptions o;
  IterateTrace tr = nsc_gda_reference_trace(o);
  tr.records.erase(tr.records.begin() + 5);
  EXPECT_THROW(audit_rate_bound(tr, q, BoundKind::NcScGda, RateAuditOptions{}), CannotAudit);
}

TEST(Verify, LogLogSlope) {
  EXPECT_NEAR(loglog_slope({0.4, 0.2, 0.1}, {100, 400, 1600}), -2.0, 1e-12);
  EXPECT_THROW(loglog_slope({1.0}, {1.0}), InvalidParameter);
}

TEST(Verify, EqualStepsizeRunStopsEarly) {
  const EqualStepContrast c = equal_stepsize_contrast(0.1, 0.2, 1'000'000);
  EXPECT_TRUE(c.boundary_hit);
  EXPECT_GE(c.first_hit_t, 0);
  EXPECT_LT(c.iterations, 1'000'000);
}

TEST(Verify, SuiteNamesAndUnknownSuite) {
  const auto& names = suite_names();
  EXPECT_NE(std::find(names.begin(), names.end(), "nsc"), names.end());
  EXPECT_THROW(run_suite("bogus"), InvalidParameter);
}

TEST(Verify, StationaritySuitePasses) {
  for (const AuditResult& a : suite_stationarity()) EXPECT_TRUE(a.passed) << a.name;
}
