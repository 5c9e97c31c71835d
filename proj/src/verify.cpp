#include "minimax/verify.hpp"

#include <algorithm>
#include <cmath>

#include "minimax/stationarity.hpp"

namespace minimax {

using nlohmann::json;

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Tracks the worst violation (lhs - rhs - slack) across many checks.
struct Worst {
  double score = -std::numeric_limits<double>::infinity();
  double lhs = 0.0, rhs = 0.0, slack = 0.0;
  long long where = -1;
  long long checked = 0;
  long long violations = 0;

  void add(long long at, double l, double r, double s) {
    ++checked;
    const double sc = l - r - s;
    if (sc > 0.0 || !std::isfinite(sc)) ++violations;
    if (sc > score || !std::isfinite(sc)) {
      score = std::isfinite(sc) ? sc : std::numeric_limits<double>::infinity();
      lhs = l;
      rhs = r;
      slack = s;
      where = at;
    }
  }

  AuditResult result(std::string name, const char* where_key) const {
    AuditResult a;
    a.name = std::move(name);
    a.lhs = lhs;
    a.rhs = rhs;
    a.slack = slack;
    a.margin = rhs - lhs;
    a.passed = checked > 0 && violations == 0;
    a.details = {{where_key, where}, {"checked", checked}, {"violations", violations}};
    if (checked == 0) a.details["note"] = "nothing to check";
    return a;
  }
};

double phi_of(const MinimaxProblem& p, const Vector& x, double tol) {
  if (p.has_phi()) return p.ground_truth->phi(x);
  return eval_phi(p, x, tol).phi;
}

// Visit consecutive recorded pairs (t-1, t) with t on the stride grid.
template <class Fn>
void for_each_step(const IterateTrace& trace, long long stride, Fn&& fn) {
  const long long s = std::max<long long>(1, stride);
  for (size_t i = 1; i < trace.records.size(); ++i) {
    const IterateRecord& cur = trace.records[i];
    const IterateRecord& prev = trace.records[i - 1];
    if (prev.t + 1 != cur.t || cur.t % s != 0) continue;
    fn(prev, cur);
  }
}

}  // namespace

json to_json(const AuditResult& a) {
  return {{"name", a.name}, {"passed", a.passed}, {"lhs", num(a.lhs)},    {"rhs", num(a.rhs)},
          {"margin", num(a.margin)}, {"slack", num(a.slack)}, {"details", a.details}};
}

double finite_diff_check(const ScalarOfX& fn, const VectorOfX& grad, const Vector& x, double h) {
  if (!(h > 0.0)) throw ContractViolation("h must be > 0");
  const Vector g = grad(x);
  double worst = 0.0;
  Vector xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    const double fp = fn(xp);
    xp[i] = x[i] - h;
    const double fm = fn(xp);
    xp[i] = x[i];
    const double fd = (fp - fm) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - g[i]) / (1.0 + std::abs(g[i])));
  }
  return worst;
}

Vector sample_x(const MinimaxProblem& p, const SamplingRegion& region, RngState& rng) {
  std::uniform_real_distribution<double> u(-region.x_radius, region.x_radius);
  Vector x(p.dim_x);
  for (int i = 0; i < p.dim_x; ++i) x[i] = u(rng);
  return x;
}

ConstantEstimates estimate_constants(const MinimaxProblem& p, int n_samples, RngState& rng,
                                     const SamplingRegion& region) {
  if (n_samples < 2) throw ContractViolation("need at least two samples");
  ConstantEstimates est;
  est.mu_hat = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_samples; ++k) {
    const Vector x = sample_x(p, region, rng), x2 = sample_x(p, region, rng);
    const Vector y = p.constraint.sample(rng), y2 = p.constraint.sample(rng);
    const Vector gx = p.grad_x(x, y), gy = p.grad_y(x, y);

    const double dz = std::sqrt((x - x2).squaredNorm() + (y - y2).squaredNorm());
    if (dz > 0.0) {
      const double dg = std::sqrt((gx - p.grad_x(x2, y2)).squaredNorm() + (gy - p.grad_y(x2, y2)).squaredNorm());
      est.ell_hat = std::max(est.ell_hat, dg / dz);
    }
    const double dx = (x - x2).norm();
    if (dx > 0.0) est.L_hat = std::max(est.L_hat, std::abs(p.value(x, y) - p.value(x2, y)) / dx);
    est.L_hat = std::max(est.L_hat, gx.norm());

    const double dy2 = (y - y2).squaredNorm();
    if (dy2 > 0.0) est.mu_hat = std::min(est.mu_hat, -(gy - p.grad_y(x, y2)).dot(y - y2) / dy2);
  }
  if (!std::isfinite(est.mu_hat)) est.mu_hat = 0.0;
  return est;
}

AuditResult check_ystar_lipschitz(const MinimaxProblem& p, int n_pairs, RngState& rng, const SamplingRegion& region) {
  if (!p.constants.strongly_concave()) throw InvalidRegime("y* Lipschitz check needs mu > 0");
  const double kappa = p.constants.kappa();
  const double zeta = 1e-14;
  const double inner = p.has_y_star() ? 0.0 : 2.0 * std::sqrt(zeta / p.constants.ell);
  auto ystar = [&](const Vector& x) -> Vector {
    if (p.has_y_star()) return p.ground_truth->y_star(x);
    return inner_max_ga(p, x, p.constraint.center(), zeta).y;
  };
  Worst w;
  for (int k = 0; k < n_pairs; ++k) {
    const Vector x = sample_x(p, region, rng);
    Vector x2 = sample_x(p, region, rng);
    double dx = (x - x2).norm();
    while (dx < 1e-12) {  // the sampler never hands back a degenerate pair
      x2 = sample_x(p, region, rng);
      dx = (x - x2).norm();
    }
    const double ratio = (ystar(x) - ystar(x2)).norm() / dx;
    w.add(k, ratio, kappa * (1.0 + 1e-6), inner / dx);
  }
  AuditResult a = w.result("ystar_lipschitz", "pair");
  a.details["kappa"] = kappa;
  return a;
}

AuditResult check_weak_convexity(const MinimaxProblem& p, int n_pairs, RngState& rng,
                                 const WeakConvexityOptions& options) {
  const double m = options.modulus > 0.0 ? options.modulus : p.constants.ell;
  const double tol = p.has_phi() ? 0.0 : options.tol;
  auto g = [&](const Vector& x) { return phi_of(p, x, options.tol) + 0.5 * m * x.squaredNorm(); };
  Worst w;
  for (int k = 0; k < n_pairs; ++k) {
    const Vector x = sample_x(p, options.region, rng), x2 = sample_x(p, options.region, rng);
    const double gm = g(0.5 * (x + x2));
    const double avg = 0.5 * (g(x) + g(x2));
    w.add(k, gm, avg, 2.0 * tol + 1e-12 * (1.0 + std::abs(avg)));
  }
  AuditResult a = w.result("weak_convexity", "pair");
  a.details["modulus"] = m;
  return a;
}

Diagnostics diagnostics_for(const IterateRecord& rec, const MinimaxProblem& p, double tol, bool moreau) {
  const Diagnostics& d = rec.diag;
  const bool sc = p.constants.strongly_concave();
  const bool complete = sc ? (!std::isnan(d.phi) && !std::isnan(d.grad_phi_norm) && !std::isnan(d.delta))
                           : (!std::isnan(d.phi) && (!moreau || (!std::isnan(d.moreau_grad_norm) &&
                                                                   !std::isnan(d.moreau_value))));
  if (complete) return d;
  IterateRecord copy = rec;
  DiagnosticsOptions opt;
  opt.tol = tol;
  opt.moreau = moreau;
  annotate_record(copy, p, opt);
  return copy.diag;
}

AuditResult audit_nsc_descent(const IterateTrace& trace, const MinimaxProblem& p, const StepAuditOptions& options) {
  if (!p.constants.strongly_concave()) throw InvalidRegime("NC-SC descent audit needs mu > 0");
  const double eta = trace.config.eta_x;
  const double l = p.constants.ell;
  Worst w;
  for_each_step(trace, options.stride, [&](const IterateRecord& prev, const IterateRecord& cur) {
    const Diagnostics a = diagnostics_for(prev, p, options.tol, false);
    const Diagnostics b = diagnostics_for(cur, p, options.tol, false);
    const double rhs = a.phi - 7.0 * eta / 16.0 * a.grad_phi_norm * a.grad_phi_norm + 9.0 * eta * l * l * a.delta / 16.0;
    w.add(cur.t, b.phi, rhs, 1e-9 * (1.0 + std::abs(a.phi)));
  });
  AuditResult r = w.result("nsc_descent", "worst_t");
  r.details["eta_x"] = eta;
  return r;
}

AuditResult audit_nsc_delta_recursion(const IterateTrace& trace, const MinimaxProblem& p,
                                      const StepAuditOptions& options) {
  if (!p.constants.strongly_concave()) throw InvalidRegime("delta recursion audit needs mu > 0");
  const double eta = trace.config.eta_x;
  const double l = p.constants.ell;
  const double k = p.constants.kappa();
  const double k3 = k * k * k;
  const double factor = 1.0 - 1.0 / (2.0 * k) + 4.0 * k3 * l * l * eta * eta;
  Worst w;
  for_each_step(trace, options.stride, [&](const IterateRecord& prev, const IterateRecord& cur) {
    const Diagnostics a = diagnostics_for(prev, p, options.tol, false);
    const Diagnostics b = diagnostics_for(cur, p, options.tol, false);
    const double rhs = factor * a.delta + 4.0 * k3 * eta * eta * a.grad_phi_norm * a.grad_phi_norm;
    w.add(cur.t, b.delta, rhs, 1e-9 * (1.0 + std::abs(a.phi) + a.delta));
  });
  AuditResult r = w.result("nsc_delta_recursion", "worst_t");
  r.details["contraction"] = factor;
  return r;
}

AuditResult audit_gdmax_descent(const IterateTrace& trace, const MinimaxProblem& p, const StepAuditOptions& options) {
  if (!p.constants.strongly_concave()) throw InvalidRegime("GDmax descent audit needs mu > 0");
  const double eta = trace.config.eta_x;
  const double l = p.constants.ell;
  const double zeta = trace.config.zeta;
  Worst w;
  for_each_step(trace, options.stride, [&](const IterateRecord& prev, const IterateRecord& cur) {
    const Diagnostics a = diagnostics_for(prev, p, options.tol, false);
    const Diagnostics b = diagnostics_for(cur, p, options.tol, false);
    const double rhs = a.phi - eta / 4.0 * a.grad_phi_norm * a.grad_phi_norm + 3.0 * eta * l * zeta / 4.0;
    w.add(cur.t, b.phi, rhs, 1e-9 * (1.0 + std::abs(a.phi)));
  });
  return w.result("gdmax_descent", "worst_t");
}

AuditResult audit_nc_descent(const IterateTrace& trace, const MinimaxProblem& p, const StepAuditOptions& options) {
  const double L = p.constants.lip_L;
  if (!(L > 0.0)) throw InvalidRegime("NC-C descent audit needs a declared L > 0");
  const double eta = trace.config.eta_x;
  const double l = p.constants.ell;
  const double tol = p.has_moreau() ? 0.0 : options.tol;
  Worst w;
  for_each_step(trace, options.stride, [&](const IterateRecord& prev, const IterateRecord& cur) {
    const Diagnostics a = diagnostics_for(prev, p, options.tol, true);
    const Diagnostics b = diagnostics_for(cur, p, options.tol, true);
    const double rhs = a.moreau_value + 2.0 * eta * l * a.gap - eta / 4.0 * a.moreau_grad_norm * a.moreau_grad_norm +
                       eta * eta * l * L * L;
    w.add(cur.t, b.moreau_value, rhs, 4.0 * tol + 1e-12 * (1.0 + std::abs(a.moreau_value)));
  });
  AuditResult r = w.result("nc_descent", "worst_t");
  r.details["stride"] = options.stride;
  return r;
}

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::NcScGda: return "rate_nsc_gda";
    case BoundKind::NcScSgda: return "rate_nsc_sgda";
    case BoundKind::NcScGdmax: return "rate_nsc_gdmax";
    case BoundKind::NcScSgdmax: return "rate_nsc_sgdmax";
    case BoundKind::NcCGda: return "rate_nc_gda";
    case BoundKind::NcCSgda: return "rate_nc_sgda";
    case BoundKind::NcCGdmax: return "rate_nc_gdmax";
  }
  return "rate_unknown";
}

bool uses_moreau(BoundKind k) {
  return k == BoundKind::NcCGda || k == BoundKind::NcCSgda || k == BoundKind::NcCGdmax;
}

RateAccumulator::RateAccumulator(std::vector<long long> prefixes) : grid_(std::move(prefixes)) {
  std::sort(grid_.begin(), grid_.end());
  grid_.erase(std::unique(grid_.begin(), grid_.end()), grid_.end());
}

void RateAccumulator::add(long long t, double measure, double potential, double phi, double f_val) {
  if (t != next_t_) throw ContractViolation("rate accumulator needs consecutive iterates");
  ++next_t_;
  if (t == 0) {
    potential0_ = potential;
    gap0_ = phi - f_val;
  }
  // The previous prefix may be waiting for its x_{T+1} potential.
  if (!done_.empty() && !done_.back().has_next && done_.back().T + 1 == t) {
    done_.back().min_potential = std::min(done_.back().min_potential, potential);
    done_.back().has_next = true;
  }
  sum_ += measure * measure;
  min_pot_ = std::min(min_pot_, potential);
  while (next_ < grid_.size() && grid_[next_] < t) ++next_;
  if (next_ < grid_.size() && grid_[next_] == t) {
    done_.push_back({t, sum_ / static_cast<double>(t + 1), min_pot_, false});
    ++next_;
  }
}

AuditResult audit_rate_bound(const std::vector<RateAccumulator>& runs, const MinimaxProblem& p,
                             const SolverConfig& cfg, BoundKind kind, const RateAuditOptions& options) {
  if (runs.empty()) throw CannotAudit("no runs to audit");
  const ProblemConstants& c = p.constants;
  const double l = c.ell, D = c.diameter_D, L = c.lip_L;
  const bool nsc = !uses_moreau(kind);
  if (nsc && !c.strongly_concave()) throw InvalidRegime("NC-SC bound on a problem with mu = 0");
  if (!nsc && !(L > 0.0)) throw InvalidRegime("NC-C bound needs a declared L > 0");
  const double kappa = nsc ? c.kappa() : 0.0;
  const double eps2 = options.epsilon * options.epsilon;
  const double s2 = options.sigma * options.sigma;
  const double M = static_cast<double>(std::max<long long>(1, cfg.batch_M));
  const std::optional<double> pmin = p.phi_min();

  double pot0 = 0.0, gap0 = 0.0;
  for (const auto& r : runs) {
    pot0 += r.potential0();
    gap0 += r.gap0();
  }
  pot0 /= static_cast<double>(runs.size());
  gap0 /= static_cast<double>(runs.size());

  Worst w;
  json per_prefix = json::array();
  const size_t n_prefix = runs.front().prefixes().size();
  for (const auto& r : runs) {
    if (r.prefixes().size() != n_prefix) throw CannotAudit("runs reached different prefix lengths");
  }
  for (size_t i = 0; i < n_prefix; ++i) {
    const long long T = runs.front().prefixes()[i].T;
    double lhs = 0.0, drop = 0.0;
    bool ok = true;
    for (const auto& r : runs) {
      const auto& pr = r.prefixes()[i];
      lhs += pr.mean_sq;
      if (pmin) {
        drop += r.potential0() - *pmin;
      } else if (pr.has_next) {
        drop += r.potential0() - pr.min_potential;
      } else {
        ok = false;
      }
    }
    if (!ok) continue;  // x_{T+1} missing and no phi_min: this prefix is not auditable
    lhs /= static_cast<double>(runs.size());
    const double delta = std::max(0.0, drop / static_cast<double>(runs.size()));
    const double Tp1 = static_cast<double>(T + 1);
    double rhs = 0.0;
    switch (kind) {
      case BoundKind::NcScGda:
      case BoundKind::NcScSgda:
        rhs = (128.0 * kappa * kappa * l * delta + 5.0 * kappa * l * l * D * D) / Tp1;
        if (kind == BoundKind::NcScSgda) rhs += options.stochastic_slack * 13.0 * s2 * kappa / M;
        break;
      case BoundKind::NcScGdmax:
      case BoundKind::NcScSgdmax:
        rhs = 32.0 * kappa * l * delta / Tp1 + 3.0 * l * cfg.zeta;
        if (kind == BoundKind::NcScSgdmax) rhs += options.stochastic_slack * s2 / (2.0 * M);
        break;
      case BoundKind::NcCGda:
        rhs = 4.0 * delta / (cfg.eta_x * Tp1) + 8.0 * l * gap0 / Tp1 + eps2 / 2.0;
        break;
      case BoundKind::NcCSgda:
        rhs = 4.0 * delta / (cfg.eta_x * Tp1) + 8.0 * l * gap0 / Tp1 + 3.0 * eps2 / 4.0;
        break;
      case BoundKind::NcCGdmax:
        if (!(eps2 > 0.0)) throw CannotAudit("NC-C GDmax bound needs epsilon");
        rhs = 48.0 * l * (L * L + s2) * delta / (eps2 * Tp1) + 8.0 * l * cfg.zeta + eps2 / 3.0;
        break;
    }
    w.add(T, lhs, rhs, options.slack);
    per_prefix.push_back({{"T", T}, {"lhs", num(lhs)}, {"rhs", num(rhs)}, {"delta_phi", num(delta)}});
  }
  if (w.checked == 0) {
    throw CannotAudit("Delta_Phi is not computable: no phi_min and no prefix with x_{T+1} recorded");
  }
  AuditResult a = w.result(to_string(kind), "worst_T");
  a.details["prefixes"] = per_prefix;
  a.details["runs"] = runs.size();
  a.details["delta_phi_source"] = pmin ? "phi_min" : "trace";
  return a;
}

AuditResult audit_rate_bound(const std::vector<IterateTrace>& traces, const MinimaxProblem& p, BoundKind kind,
                             const RateAuditOptions& options) {
  if (traces.empty()) throw CannotAudit("no traces to audit");
  if (!p.has_phi() && !p.phi_min() && !p.constants.strongly_concave()) {
    throw CannotAudit("Phi is not evaluable and phi_min is unknown");
  }
  const bool moreau = uses_moreau(kind);
  std::vector<RateAccumulator> runs;
  for (const IterateTrace& tr : traces) {
    RateAccumulator acc(options.prefixes);
    for (const IterateRecord& r : tr.records) {
      if (r.t != acc.next_expected()) throw CannotAudit("rate audit needs every iterate (stride 1)");
      const Diagnostics d = diagnostics_for(r, p, options.tol, moreau);
      if (moreau) {
        acc.add(r.t, d.moreau_grad_norm, d.moreau_value, d.phi, r.f_val);
      } else {
        acc.add(r.t, d.grad_phi_norm, d.phi, d.phi, r.f_val);
      }
    }
    runs.push_back(std::move(acc));
  }
  return audit_rate_bound(runs, p, traces.front().config, kind, options);
}

AuditResult audit_rate_bound(const IterateTrace& trace, const MinimaxProblem& p, BoundKind kind,
                             const RateAuditOptions& options) {
  return audit_rate_bound(std::vector<IterateTrace>{trace}, p, kind, options);
}

}  // namespace minimax
