#include "minimax/suites.hpp"

#include <algorithm>
#include <cmath>

#include "minimax/problems.hpp"
#include "minimax/stationarity.hpp"

namespace minimax {

using nlohmann::json;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) out[i++] = a;
  return out;
}

AuditResult make_result(std::string name, double lhs, double rhs, double slack) {
  AuditResult a;
  a.name = std::move(name);
  a.lhs = lhs;
  a.rhs = rhs;
  a.slack = slack;
  a.margin = rhs - lhs;
  a.passed = std::isfinite(lhs) && lhs <= rhs + slack;
  return a;
}

double clamp2(double x) { return std::clamp(2.0 * x, -1.0, 1.0); }

// Log-spaced prefix grid 1, 2, 5 x 10^k up to `top`.
std::vector<long long> log_prefixes(long long top) {
  std::vector<long long> g;
  for (long long p = 10; p <= top; p *= 10) {
    for (long long m : {1LL, 2LL, 5LL}) {
      if (p * m <= top) g.push_back(p * m);
    }
  }
  return g;
}

AuditResult robust_regression_concavity(int n_points) {
  const RegressionData data = default_regression_data();
  const MinimaxProblem p = make_robust_regression(data.features, data.targets, 5.0, 0.5);
  RngState rng = make_rng(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double Rw = RobustRegressionOptions{}.weight_radius;
  const double h = 1e-5;
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_points; ++k) {
    Vector w(p.dim_x);
    for (int j = 0; j < p.dim_x; ++j) w[j] = normal(rng);
    w *= Rw * std::pow(unif(rng), 1.0 / p.dim_x) / w.norm();
    const Vector y = p.constraint.sample(rng);
    Matrix H(p.dim_y, p.dim_y);
    Vector yp = y;
    for (int i = 0; i < p.dim_y; ++i) {
      yp[i] = y[i] + h;
      const Vector gp = p.grad_y(w, yp);
      yp[i] = y[i] - h;
      const Vector gm = p.grad_y(w, yp);
      yp[i] = y[i];
      H.col(i) = (gp - gm) / (2.0 * h);
    }
    const Matrix S = 0.5 * (H + H.transpose());
    worst = std::max(worst, Eigen::SelfAdjointEigenSolver<Matrix>(S, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff());
  }
  // Top y-curvature must sit below -mu (finite-difference error ~1e-9).
  AuditResult a = make_result("robust_regression_concavity", worst, -p.constants.mu, 1e-7);
  a.details = {{"points", n_points}, {"mu", p.constants.mu}};
  return a;
}

AuditResult constants_check(const std::string& name, const MinimaxProblem& p, RngState& rng, double ell_floor) {
  const ConstantEstimates est = estimate_constants(p, 10000, rng);
  const ProblemConstants& c = p.constants;
  // Score: the worst of the three ordering requirements, as lhs - rhs.
  double lhs = est.ell_hat - c.ell;
  lhs = std::max(lhs, ell_floor * c.ell - est.ell_hat);
  if (c.lip_L > 0.0) lhs = std::max(lhs, est.L_hat - c.lip_L);
  lhs = std::max(lhs, c.mu - est.mu_hat);
  AuditResult a = make_result(name, lhs, 0.0, 1e-9);
  a.details = {{"ell", c.ell},         {"ell_hat", est.ell_hat}, {"L", c.lip_L},
               {"L_hat", est.L_hat},   {"mu", c.mu},             {"mu_hat", est.mu_hat}};
  return a;
}

// |x_t| growth and boundary contact of equal-stepsize GDA.
AuditResult equal_step_cycling() {
  const EqualStepContrast r = equal_stepsize_contrast(0.1, -1.0, 1000);
  AuditResult a = make_result("equal_stepsize_cycling", 1.0, r.max_abs_x, 0.0);
  a.passed = a.passed && r.boundary_hit;
  a.details = {{"max_abs_x", r.max_abs_x}, {"boundary_hit", r.boundary_hit}, {"boundary_t", r.boundary_t}};
  return a;
}

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidParameter("slope fit needs two or more matched points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidParameter("log-log fit needs positive values");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (!(std::abs(den) > 0.0)) throw InvalidParameter("log-log fit needs distinct x values");
  return (n * sxy - sx * sy) / den;
}

IterateTrace nsc_gda_reference_trace(const SuiteOptions& options) {
  const MinimaxProblem p = make_default_quadratic();
  SolverConfig cfg = theorem_stepsizes(Regime::NcScDet, Family::TwoTimeScale, p.constants, 0.1, 0.0);
  cfg.eta_x *= options.stepsize_multiplier * options.eta_x_multiplier;
  cfg.eta_y *= options.stepsize_multiplier;
  cfg.horizon_T = 1001;
  IterateTrace tr = run_gda(p, cfg, vec({1.0, 1.0}), p.constraint.center());
  DiagnosticsOptions d;
  d.stride = 1;
  annotate_trace(tr, p, d);
  return tr;
}

std::vector<AuditResult> nsc_sgda_rate(int seeds, double sigma, double epsilon, std::uint64_t base_seed) {
  MinimaxProblem p = make_default_quadratic();
  const StochasticOracle o = add_gaussian_noise(p, sigma);
  SolverConfig cfg = theorem_stepsizes(Regime::NcScStoch, Family::TwoTimeScale, o.base.constants, epsilon, 0.0);
  cfg.horizon_T = 1001;
  std::vector<RateAccumulator> runs;
  double min_hits = 0.0;
  for (int s = 0; s < seeds; ++s) {
    cfg.seed = base_seed + static_cast<std::uint64_t>(s);
    RateAccumulator acc({10, 100, 1000});
    stream_sgda(o, cfg, vec({1.0, 1.0}), p.constraint.center(), [&](const IterateRecord& r) {
      const double g = p.ground_truth->grad_phi(r.x).norm();
      const double phi = p.ground_truth->phi(r.x);
      acc.add(r.t, g, phi, phi, r.f_val);
      return true;
    });
    runs.push_back(std::move(acc));
  }
  // Hits are counted from (1,0): from (1,1) the iterates ride the unstable
  // direction of the saddle and |grad Phi| grows.
  SolverConfig hit_cfg = theorem_stepsizes(Regime::NcScStoch, Family::TwoTimeScale, o.base.constants, epsilon, 0.0);
  for (int s = 0; s < seeds; ++s) {
    hit_cfg.seed = base_seed + static_cast<std::uint64_t>(s);
    bool hit = false;
    stream_sgda(o, hit_cfg, vec({1.0, 0.0}), p.constraint.center(), [&](const IterateRecord& r) {
      hit = p.ground_truth->grad_phi(r.x).norm() <= epsilon;
      return !hit;
    });
    if (hit) min_hits += 1.0;
  }
  RateAuditOptions ro;
  ro.sigma = sigma;
  ro.epsilon = epsilon;
  AuditResult rate = audit_rate_bound(runs, o.base, cfg, BoundKind::NcScSgda, ro);
  rate.details["batch_M"] = cfg.batch_M;
  rate.details["seeds"] = seeds;
  // At least 16 of 20 seeds reach min_t |grad Phi| <= epsilon.
  AuditResult hits = make_result("sgda_seed_hits", 0.8 * seeds, min_hits, 0.0);
  hits.details = {{"seeds", seeds}, {"hits", min_hits}};
  return {rate, hits};
}

std::vector<AuditResult> nsc_gdmax_rate(double epsilon) {
  const MinimaxProblem p = make_default_quadratic();
  SolverConfig cfg = theorem_stepsizes(Regime::NcScDet, Family::MaxOracle, p.constants, epsilon, 0.0);
  cfg.horizon_T = 1001;
  IterateTrace tr = run_gdmax(p, cfg, vec({1.0, 1.0}), p.constraint.center());
  annotate_trace(tr, p, DiagnosticsOptions{1});
  RateAuditOptions ro;
  ro.epsilon = epsilon;
  AuditResult rate = audit_rate_bound(tr, p, BoundKind::NcScGdmax, ro);
  AuditResult desc = audit_gdmax_descent(tr, p);
  rate.details["zeta"] = cfg.zeta;
  rate.details["eta_x"] = cfg.eta_x;
  return {desc, rate};
}

NcConvergence nc_gda_convergence(double epsilon) {
  const MinimaxProblem p = make_bilinear_box(1.0, 1);
  const Vector x0 = vec({1.0}), y0 = vec({1.0});
  const ClosedFormOracles& gt = *p.ground_truth;
  const double dphi = gt.moreau_value(x0) - *gt.phi_min;
  const double d0 = gt.phi(x0) - p.value(x0, y0);
  const SolverConfig cfg = theorem_stepsizes(Regime::NcCDet, Family::TwoTimeScale, p.constants, epsilon, dphi, d0);

  NcConvergence out;
  out.horizon = cfg.horizon_T;
  RateAccumulator acc(log_prefixes(std::min<long long>(cfg.horizon_T, 100'000'000)));
  double best = std::numeric_limits<double>::infinity();
  stream_gda(p, cfg, x0, y0, [&](const IterateRecord& r) {
    // Closed-form envelope of |x| at 1/2: clamp(2x, -1, 1) and the Huber value.
    const double g = std::abs(clamp2(r.x[0]));
    acc.add(r.t, g, gt.moreau_value(r.x), gt.phi(r.x), r.f_val);
    best = std::min(best, g);
    out.iterations = r.t;
    if (g <= epsilon) {
      out.hit_t = r.t;
      return false;
    }
    return true;
  });
  out.reached = make_result("nc_gda_reaches_epsilon", best, epsilon, 0.0);
  out.reached.passed = out.reached.passed && out.hit_t >= 0 && out.hit_t <= cfg.horizon_T;
  out.reached.details = {{"hit_t", out.hit_t}, {"horizon", cfg.horizon_T}, {"eta_x", cfg.eta_x}};
  RateAuditOptions ro;
  ro.epsilon = epsilon;
  out.rate = audit_rate_bound(std::vector<RateAccumulator>{acc}, p, cfg, BoundKind::NcCGda, ro);
  out.rate.name = "rate_nc_gda_to_epsilon";
  return out;
}

EqualStepContrast equal_stepsize_contrast(double eta, double epsilon, long long iterations) {
  const MinimaxProblem p = make_bilinear_box(1.0, 1);
  SolverConfig cfg;
  cfg.eta_x = eta;
  cfg.eta_y = eta;
  cfg.horizon_T = iterations;
  cfg.regime = Regime::NcCDet;
  EqualStepContrast out;
  out.min_moreau_grad = std::numeric_limits<double>::infinity();
  stream_gda(p, cfg, vec({1.0}), vec({1.0}), [&](const IterateRecord& r) {
    const double g = std::abs(clamp2(r.x[0]));
    out.min_moreau_grad = std::min(out.min_moreau_grad, g);
    if (out.first_hit_t < 0 && g <= epsilon) out.first_hit_t = r.t;
    out.max_abs_x = std::max(out.max_abs_x, std::abs(r.x[0]));
    // y0 starts on the boundary; contact counts from the first step on.
    if (r.t > 0 && !out.boundary_hit && std::abs(r.y[0]) >= 1.0) {
      out.boundary_hit = true;
      out.boundary_t = r.t;
    }
    out.iterations = r.t;
    // Once both events are in hand the rest of the run adds nothing but max |x|.
    return !(out.boundary_hit && out.first_hit_t >= 0);
  });
  return out;
}

std::vector<AuditResult> translation_checks() {
  std::vector<AuditResult> out;
  {
    const MinimaxProblem q = make_default_quadratic();
    const double eps = 1e-3;
    const Vector xh = vec({2.5e-4, -2.5e-4});
    const Translation t = translate_phi_to_joint(q, xh, eps);
    AuditResult a = make_result("translate_nsc", t.residuals.gx_norm, t.bound_gx, 1e-12);
    a.passed = t.within_bounds;
    a.details = {{"y_residual", t.residuals.y_residual}, {"bound_y", t.bound_y},
                 {"grad_phi", t.phi_measure},          {"gradients", t.gradient_count}};
    out.push_back(a);

    const StationarityReport r = check_converse_translation(q, t.x, t.y);
    AuditResult c = make_result("converse_nsc", r.epsilon_achieved, r.bound, 2.0 * q.constants.ell * 1e-10 + 1e-12);
    c.passed = r.holds;
    c.details = {{"implied_epsilon", r.implied_epsilon}};
    out.push_back(c);
  }
  {
    const MinimaxProblem b = make_bilinear_box(1.0, 1);
    const double eps = 0.02;
    const Vector xh = vec({0.01});
    const Translation t = translate_phi_to_joint(b, xh, eps);
    AuditResult a = make_result("translate_nc", t.residuals.gx_norm, t.bound_gx, 1e-12);
    a.passed = t.within_bounds;
    a.details = {{"y_residual", t.residuals.y_residual}, {"bound_y", t.bound_y},
                 {"moreau_grad", t.phi_measure},       {"gradients", t.gradient_count}};
    out.push_back(a);

    struct Pair {
      const char* name;
      double x, y;
    };
    for (const Pair& pr : {Pair{"converse_nc_boundary", 0.05, 1.0}, Pair{"converse_nc_origin", 0.0, 0.05},
                           Pair{"converse_nc_translated", t.x[0], t.y[0]}}) {
      const StationarityReport r = check_converse_translation(b, vec({pr.x}), vec({pr.y}));
      AuditResult c = make_result(pr.name, r.epsilon_achieved, r.bound, 2.0 * 1e-10 + 1e-12);
      c.passed = r.holds;
      c.details = {{"gx", r.residuals.gx_norm}, {"y_residual", r.residuals.y_residual}};
      out.push_back(c);
    }
  }
  return out;
}

ScalingResult nsc_gda_scaling(const std::vector<double>& epsilons) {
  if (epsilons.size() < 2) throw InvalidParameter("scaling needs two or more epsilons");
  const MinimaxProblem p = make_default_quadratic();
  const double eps_min = *std::min_element(epsilons.begin(), epsilons.end());
  SolverConfig cfg = theorem_stepsizes(Regime::NcScDet, Family::TwoTimeScale, p.constants, eps_min, 0.0);
  ScalingResult out;
  for (double e : epsilons) out.points.push_back({e, -1});
  // One trajectory serves every epsilon: the schedule does not depend on it.
  double sum = 0.0;
  size_t open = out.points.size();
  stream_gda(p, cfg, vec({1.0, 0.0}), p.constraint.center(), [&](const IterateRecord& r) {
    const double g = p.ground_truth->grad_phi(r.x).norm();
    sum += g * g;
    const double ms = sum / static_cast<double>(r.t + 1);
    for (ScalingPoint& pt : out.points) {
      if (pt.iters_to_epsilon < 0 && ms <= pt.epsilon * pt.epsilon) {
        pt.iters_to_epsilon = r.t;
        --open;
      }
    }
    return open > 0;
  });
  std::vector<double> xs, ys;
  for (const ScalingPoint& pt : out.points) {
    if (pt.iters_to_epsilon <= 0) throw CannotAudit("epsilon " + std::to_string(pt.epsilon) + " was not reached");
    xs.push_back(pt.epsilon);
    ys.push_back(static_cast<double>(pt.iters_to_epsilon));
  }
  out.slope = loglog_slope(xs, ys);
  return out;
}

std::vector<AuditResult> suite_nsc(const SuiteOptions& options) {
  std::vector<AuditResult> out;
  const MinimaxProblem p = make_default_quadratic();
  const IterateTrace tr = nsc_gda_reference_trace(options);
  out.push_back(audit_nsc_descent(tr, p));
  out.push_back(audit_nsc_delta_recursion(tr, p));
  RateAuditOptions ro;
  out.push_back(audit_rate_bound(tr, p, BoundKind::NcScGda, ro));

  for (AuditResult& a : nsc_sgda_rate(20, 0.5, 0.2, options.seed)) out.push_back(std::move(a));
  for (AuditResult& a : nsc_gdmax_rate(0.1)) out.push_back(std::move(a));

  RngState rng = make_rng(options.seed);
  out.push_back(check_ystar_lipschitz(p, 1000, rng, SamplingRegion{20.0}));
  out.push_back(constants_check("constants_quadratic", p, rng, 0.8));
  out.push_back(robust_regression_concavity(100));
  return out;
}

std::vector<AuditResult> suite_nc(const SuiteOptions& options) {
  std::vector<AuditResult> out;
  const MinimaxProblem p = make_bilinear_box(1.0, 1);
  const double eps = 0.2;
  const Vector x0 = vec({1.0}), y0 = vec({1.0});
  const ClosedFormOracles& gt = *p.ground_truth;
  SolverConfig cfg = theorem_stepsizes(Regime::NcCDet, Family::TwoTimeScale, p.constants, eps,
                                       gt.moreau_value(x0), gt.phi(x0) - p.value(x0, y0));
  cfg.horizon_T = 10'000;
  IterateTrace tr = run_gda(p, cfg, x0, y0);
  annotate_trace(tr, p, DiagnosticsOptions{1});
  StepAuditOptions so;
  so.stride = 10;
  out.push_back(audit_nc_descent(tr, p, so));
  RateAuditOptions ro;
  ro.epsilon = eps;
  ro.prefixes = {10, 100, 1000, 10000};
  out.push_back(audit_rate_bound(tr, p, BoundKind::NcCGda, ro));

  const NcConvergence conv = nc_gda_convergence(eps);
  out.push_back(conv.reached);
  out.push_back(conv.rate);

  RngState rng = make_rng(options.seed);
  out.push_back(check_weak_convexity(p, 1000, rng));
  out.push_back(constants_check("constants_bilinear", p, rng, 0.99));
  out.push_back(equal_step_cycling());
  return out;
}

std::vector<AuditResult> suite_stationarity(const SuiteOptions& options) {
  std::vector<AuditResult> out;
  RngState rng = make_rng(options.seed);
  const MinimaxProblem q = make_default_quadratic();
  const MinimaxProblem b = make_bilinear_box(1.0, 1);
  const double l = b.constants.ell;

  {  // Danskin: numerical grad_phi against central differences of eval_phi.
    double worst = 0.0;
    const ScalarOfX f = [&](const Vector& x) { return eval_phi(q, x, 1e-14).phi; };
    const VectorOfX g = [&](const Vector& x) { return grad_phi(q, x, 1e-10); };
    for (int k = 0; k < 100; ++k) {
      const Vector x = sample_x(q, SamplingRegion{3.0}, rng);
      worst = std::max(worst, finite_diff_check(f, g, x, 1e-5 * (1.0 + x.norm())));
    }
    AuditResult a = make_result("danskin_fd", worst, 1e-4, 0.0);
    a.details = {{"points", 100}};
    out.push_back(a);
  }
  {  // Envelope gradient on a 601-point grid, direct and saddle paths.
    double worst = 0.0, worst_eg = 0.0;
    for (int k = 0; k <= 600; ++k) {
      const Vector x = vec({-3.0 + 6.0 * k / 600.0});
      worst = std::max(worst, std::abs(moreau_grad(b, x, 1e-12, ProxMethod::Direct)[0] - clamp2(x[0])));
      if (k % 50 == 0) {
        worst_eg = std::max(worst_eg, std::abs(moreau_grad(b, x, 1e-9, ProxMethod::Extragradient)[0] - clamp2(x[0])));
      }
    }
    AuditResult a = make_result("moreau_closed_form", worst, 1e-6, 0.0);
    a.details = {{"grid", 601}};
    out.push_back(a);
    AuditResult e = make_result("moreau_extragradient_path", worst_eg, 1e-6, 0.0);
    e.details = {{"grid", 13}};
    out.push_back(e);
  }
  {  // Minorization, prox displacement and the subgradient at the prox point.
    double minor = -std::numeric_limits<double>::infinity();
    double disp = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 120; ++k) {
      const Vector x = vec({-3.0 + 6.0 * k / 120.0});
      const Vector w = moreau_prox(b, x, 1e-12, ProxMethod::Direct);
      const double phi_x = std::abs(x[0]);
      const double env = std::abs(w[0]) + l * (w - x).squaredNorm();
      minor = std::max({minor, env - phi_x, std::abs(w[0]) - phi_x});
      const double gnorm = 2.0 * l * (x - w).norm();
      // dist(0, dPhi(w)) for Phi = |.|: 1 away from 0, 0 at the kink.
      const double sub = std::abs(w[0]) > 1e-9 ? 1.0 : 0.0;
      disp = std::max({disp, (x - w).norm() - gnorm / (2.0 * l), sub - gnorm});
    }
    out.push_back(make_result("envelope_minorization", minor, 0.0, 1e-12));
    out.push_back(make_result("prox_displacement", disp, 0.0, 1e-6));
  }
  {  // Envelope smoothness: the envelope is 2l-smooth, so the Taylor remainder is <= l |dx|^2.
    double worst = -std::numeric_limits<double>::infinity();
    double ratio = 0.0;
    long long stated = 0;
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 1000; ++k) {
      const Vector x = vec({u(rng)}), x2 = vec({u(rng)});
      const double dx2 = (x2 - x).squaredNorm();
      if (dx2 < 1e-12) continue;
      const double rem = moreau_value(b, x2, 1e-12, ProxMethod::Direct) - moreau_value(b, x, 1e-12, ProxMethod::Direct) -
                         (x2 - x).dot(moreau_grad(b, x, 1e-12, ProxMethod::Direct));
      worst = std::max(worst, std::abs(rem) - l * dx2);
      ratio = std::max(ratio, std::abs(rem) / dx2);
      if (rem > 0.5 * l * dx2 + 1e-9) ++stated;
    }
    AuditResult a = make_result("envelope_smoothness", worst, 0.0, 1e-9);
    a.details = {{"max_remainder_ratio", ratio}, {"pairs_above_half_ell", stated}};
    out.push_back(a);
  }
  {  // Closed forms against the numerical module at 50 points each.
    double worst_q = 0.0;
    for (int k = 0; k < 50; ++k) {
      const Vector x = sample_x(q, SamplingRegion{15.0}, rng);
      const ClosedFormOracles& gt = *q.ground_truth;
      const PhiValue pv = eval_phi(q, x, 1e-12);
      const double s = 1.0 + std::abs(gt.phi(x));
      worst_q = std::max(worst_q, std::abs(pv.phi - gt.phi(x)) / s);
      worst_q = std::max(worst_q, (grad_phi(q, x, 1e-9) - gt.grad_phi(x)).norm() / (1.0 + gt.grad_phi(x).norm()));
      worst_q = std::max(worst_q, (pv.y_star - gt.y_star(x)).norm() / (1.0 + gt.y_star(x).norm()));
    }
    out.push_back(make_result("closed_form_quadratic", worst_q, 1e-4, 0.0));

    const MinimaxProblem b2 = make_bilinear_box(1.0, 2);
    double worst_b = 0.0;
    for (int k = 0; k < 50; ++k) {
      const Vector x = sample_x(b2, SamplingRegion{3.0}, rng);
      const ClosedFormOracles& gt = *b2.ground_truth;
      worst_b = std::max(worst_b, std::abs(eval_phi(b2, x, 1e-12).phi - gt.phi(x)) / (1.0 + gt.phi(x)));
      const Vector gm = moreau_grad(b2, x, 1e-9);
      worst_b = std::max(worst_b, (gm - gt.moreau_grad(x)).norm() / (1.0 + gt.moreau_grad(x).norm()));
      const double mv = moreau_value(b2, x, 1e-9);
      worst_b = std::max(worst_b, std::abs(mv - gt.moreau_value(x)) / (1.0 + std::abs(gt.moreau_value(x))));
    }
    out.push_back(make_result("closed_form_bilinear", worst_b, 1e-4, 0.0));
  }
  for (AuditResult& a : translation_checks()) out.push_back(std::move(a));
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"nsc", "nc", "stationarity", "all"};
  return names;
}

std::vector<AuditResult> run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "nsc") return suite_nsc(options);
  if (name == "nc") return suite_nc(options);
  if (name == "stationarity") return suite_stationarity(options);
  if (name == "all") {
    std::vector<AuditResult> out = suite_nsc(options);
    for (auto* fn : {&suite_nc, &suite_stationarity}) {
      for (AuditResult& a : fn(options)) out.push_back(std::move(a));
    }
    return out;
  }
  throw InvalidParameter("unknown suite '" + name + "' (expected nsc, nc, stationarity or all)");
}

}  // namespace minimax
