#include "minimax/stationarity.hpp"

#include <algorithm>
#include <cmath>

namespace minimax {

PhiValue eval_phi(const MinimaxProblem& problem, const Vector& x, double tol) {
  if (!(tol > 0.0)) throw ContractViolation("tol must be > 0");
  if (x.size() != problem.dim_x) throw ContractViolation("x has the wrong dimension");
  InnerMaxResult r = inner_max_ga(problem, x, problem.constraint.center(), tol);
  const double v = problem.value(x, r.y);
  return {v, std::move(r.y)};
}

Vector grad_phi(const MinimaxProblem& problem, const Vector& x, double tol) {
  if (!problem.constants.strongly_concave()) {
    throw NondifferentiableRegime("Phi may be nondifferentiable when mu = 0; use moreau_grad instead");
  }
  if (!(tol > 0.0)) throw ContractViolation("tol must be > 0");
  const double zeta = tol * tol / problem.constants.ell;
  InnerMaxResult r = inner_max_ga(problem, x, problem.constraint.center(), zeta);
  return problem.grad_x(x, r.y);
}

namespace {

double phi_at(const MinimaxProblem& p, const Vector& x, double tol) {
  if (p.has_phi()) return p.ground_truth->phi(x);
  return eval_phi(p, x, tol).phi;
}

// Golden-section search on the strongly convex 1-D prox objective.
double prox_direct_1d(const MinimaxProblem& p, double x) {
  const double l = p.constants.ell;
  auto g = [&](double w) {
    Vector v(1);
    v[0] = w;
    return p.ground_truth->phi(v) + l * (w - x) * (w - x);
  };
  const double gx = g(x);
  double R = p.constants.lip_L > 0.0 ? p.constants.lip_L / (2.0 * l) : 1.0;
  R = std::max(R, 1e-8);
  while (!(g(x - R) >= gx && g(x + R) >= gx)) R *= 2.0;
  double a = x - R, b = x + R;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = g(c), fd = g(d);
  for (int k = 0; k < 400 && (b - a) > 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(x)); ++k) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = g(d);
    }
  }
  // Return the best of the bracket points (handles kinks at the minimizer).
  double best = 0.5 * (a + b), fbest = g(best);
  for (double w : {a, b, c, d}) {
    const double fw = g(w);
    if (fw < fbest) {
      fbest = fw;
      best = w;
    }
  }
  return best;
}

}  // namespace

ProxResult moreau_prox_full(const MinimaxProblem& problem, const Vector& x, double tol, ProxMethod method) {
  if (!(tol > 0.0)) throw ContractViolation("tol must be > 0");
  if (x.size() != problem.dim_x) throw ContractViolation("x has the wrong dimension");
  const bool direct_ok = problem.has_phi() && problem.dim_x == 1;
  if (method == ProxMethod::Auto) method = direct_ok ? ProxMethod::Direct : ProxMethod::Extragradient;
  ProxResult out;
  out.method = method;
  if (method == ProxMethod::Direct) {
    if (!direct_ok) throw ContractViolation("direct prox needs a closed-form Phi in one dimension");
    out.prox = Vector::Constant(1, prox_direct_1d(problem, x[0]));
    return out;
  }
  const double l = problem.constants.ell;
  MinimaxProblem reg = regularized(problem, x, l);
  ExtragradientOptions opt;
  opt.ell = l;
  ExtragradientResult r = extragradient_scc(reg, x, problem.constraint.center(), tol, opt);
  out.prox = std::move(r.x);
  out.y = std::move(r.y);
  out.iters = r.iters;
  return out;
}

Vector moreau_prox(const MinimaxProblem& problem, const Vector& x, double tol, ProxMethod method) {
  return moreau_prox_full(problem, x, tol, method).prox;
}

Vector moreau_grad(const MinimaxProblem& problem, const Vector& x, double tol, ProxMethod method) {
  return 2.0 * problem.constants.ell * (x - moreau_prox(problem, x, tol, method));
}

double moreau_value(const MinimaxProblem& problem, const Vector& x, double tol, ProxMethod method) {
  const Vector w = moreau_prox(problem, x, tol, method);
  return phi_at(problem, w, tol) + problem.constants.ell * (w - x).squaredNorm();
}

JointResiduals check_joint_stationarity(const MinimaxProblem& problem, const Vector& x, const Vector& y) {
  problem.check_point(x, y);
  const double l = problem.constants.ell;
  JointResiduals r;
  r.gx_norm = problem.grad_x(x, y).norm();
  r.y_residual = (problem.constraint.project(y + problem.grad_y(x, y) / l) - y).norm();
  return r;
}

Translation translate_phi_to_joint(const MinimaxProblem& problem, const Vector& x_hat, double epsilon,
                                   double inner_tol) {
  if (!(epsilon > 0.0)) throw ContractViolation("epsilon must be > 0");
  const ProblemConstants& c = problem.constants;
  const double l = c.ell;
  Translation out;
  if (c.strongly_concave()) {
    // Ascend until |y - y*| <= 2 kappa r <= eps / l; then r <= eps / l too.
    const double kappa = c.kappa();
    const double target = epsilon / (2.0 * kappa * l);
    const long long cap = 10'000'000;
    Vector y = problem.constraint.center();
    for (long long k = 0;; ++k) {
      const Vector g = problem.grad_y(x_hat, y);
      ++out.gradient_count;
      const Vector y_plus = problem.constraint.project(y + g / l);
      if ((y_plus - y).norm() <= target) break;
      if (k >= cap) throw BudgetExceeded("translation ascent did not reach the target", x_hat, y, problem.value(x_hat, y));
      y = y_plus;
    }
    out.x = x_hat;
    out.y = std::move(y);
    ++out.gradient_count;  // grad_x at the returned pair
    out.phi_measure =
        problem.has_grad_phi() ? problem.ground_truth->grad_phi(x_hat).norm() : grad_phi(problem, x_hat, inner_tol).norm();
    out.bound_gx = out.phi_measure + epsilon;
    out.bound_y = epsilon / l;
  } else {
    MinimaxProblem reg = regularized(problem, x_hat, l);
    ExtragradientOptions opt;
    opt.ell = l;
    ExtragradientResult r = extragradient_scc(reg, x_hat, problem.constraint.center(), epsilon, opt);
    out.x = std::move(r.x);
    out.y = std::move(r.y);
    out.gradient_count = 4 * r.iters + 2;
    out.phi_measure = problem.has_moreau() ? problem.ground_truth->moreau_grad(x_hat).norm()
                                           : moreau_grad(problem, x_hat, inner_tol).norm();
    out.bound_gx = (2.0 * l + 1.0) * epsilon + out.phi_measure;
    out.bound_y = epsilon / l;
  }
  out.residuals = check_joint_stationarity(problem, out.x, out.y);
  const double slack = 1e-12 + 4.0 * inner_tol;
  out.within_bounds = out.residuals.gx_norm <= out.bound_gx + slack && out.residuals.y_residual <= out.bound_y + slack;
  return out;
}

std::string to_string(Notion n) {
  switch (n) {
    case Notion::GradPhi: return "grad_phi";
    case Notion::MoreauGrad: return "moreau_grad";
    case Notion::Joint: return "joint";
  }
  return "unknown";
}

StationarityReport check_converse_translation(const MinimaxProblem& problem, const Vector& x_hat, const Vector& y_hat,
                                              double inner_tol) {
  const ProblemConstants& c = problem.constants;
  const double l = c.ell;
  StationarityReport rep;
  rep.point_x = x_hat;
  rep.certificate_y = y_hat;
  rep.residuals = check_joint_stationarity(problem, x_hat, y_hat);
  rep.inner_tolerance = inner_tol;
  const double gx = rep.residuals.gx_norm;
  const double r = rep.residuals.y_residual;
  if (c.strongly_concave()) {
    const double kappa = c.kappa();
    rep.notion = Notion::GradPhi;
    rep.implied_epsilon = kappa * std::max(gx, l * r);
    rep.epsilon_achieved = problem.has_grad_phi() ? problem.ground_truth->grad_phi(x_hat).norm()
                                                  : grad_phi(problem, x_hat, inner_tol).norm();
    // |grad Phi| <= gx + l |y - y*| and |y - y*| <= r / (1 - sqrt(1 - 1/kappa)).
    const double contraction = 1.0 - std::sqrt(std::max(0.0, 1.0 - 1.0 / kappa));
    rep.bound = gx + l * r / contraction;
  } else {
    rep.notion = Notion::MoreauGrad;
    rep.implied_epsilon = std::sqrt(std::max(gx, l * r));
    rep.epsilon_achieved = problem.has_moreau() ? problem.ground_truth->moreau_grad(x_hat).norm()
                                                : moreau_grad(problem, x_hat, inner_tol).norm();
    const double b = gx + l * r;
    rep.bound = b + std::sqrt(b * b + 4.0 * l * l * r * c.diameter_D);
  }
  rep.holds = rep.epsilon_achieved <= rep.bound + 2.0 * l * inner_tol + 1e-12;
  return rep;
}

long long default_stride(long long T) {
  if (T <= 10'000) return 1;
  return (T + 9'999) / 10'000;
}

void annotate_record(IterateRecord& rec, const MinimaxProblem& p, const DiagnosticsOptions& options) {
  const double tol = options.tol;
  Diagnostics& d = rec.diag;
  if (p.constants.strongly_concave()) {
    Vector ystar;
    if (p.has_y_star()) {
      ystar = p.ground_truth->y_star(rec.x);
      d.phi = p.has_phi() ? p.ground_truth->phi(rec.x) : p.value(rec.x, ystar);
    } else {
      PhiValue pv = eval_phi(p, rec.x, tol * tol / p.constants.ell);
      ystar = std::move(pv.y_star);
      d.phi = pv.phi;
    }
    d.grad_phi_norm = p.has_grad_phi() ? p.ground_truth->grad_phi(rec.x).norm() : grad_phi(p, rec.x, tol).norm();
    d.delta = (ystar - rec.y).squaredNorm();
  } else {
    d.phi = phi_at(p, rec.x, tol);
    if (options.moreau) {
      if (p.has_moreau()) {
        d.moreau_grad_norm = p.ground_truth->moreau_grad(rec.x).norm();
        d.moreau_value = p.ground_truth->moreau_value(rec.x);
      } else {
        const Vector w = moreau_prox(p, rec.x, tol);
        d.moreau_grad_norm = 2.0 * p.constants.ell * (rec.x - w).norm();
        d.moreau_value = phi_at(p, w, tol) + p.constants.ell * (w - rec.x).squaredNorm();
      }
    }
  }
  d.gap = d.phi - rec.f_val;
}

void annotate_trace(IterateTrace& trace, const MinimaxProblem& p, const DiagnosticsOptions& options) {
  if (trace.records.empty()) return;
  const long long T = trace.records.back().t;
  const long long s = options.stride > 0 ? options.stride : default_stride(T);
  for (size_t i = 0; i < trace.records.size(); ++i) {
    IterateRecord& r = trace.records[i];
    bool want = r.t % s == 0 || r.t == T;
    if (!want && options.pairs && (r.t + 1) % s == 0) want = true;
    if (want) annotate_record(r, p, options);
  }
}

}  // namespace minimax
