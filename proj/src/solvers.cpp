#include "minimax/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace minimax {

const IterateRecord* IterateTrace::find(long long t) const {
  auto it = std::lower_bound(records.begin(), records.end(), t,
                             [](const IterateRecord& r, long long v) { return r.t < v; });
  return (it != records.end() && it->t == t) ? &*it : nullptr;
}

IterateRecord* IterateTrace::find(long long t) {
  return const_cast<IterateRecord*>(static_cast<const IterateTrace&>(*this).find(t));
}

namespace {

using Clock = std::chrono::steady_clock;

void check_start(const MinimaxProblem& p, const SolverConfig& cfg, const Vector& x0, const Vector& y0) {
  p.check_point(x0, y0);
  if (!(cfg.eta_x > 0.0)) throw ContractViolation("eta_x must be > 0");
  if (cfg.horizon_T < 0) throw ContractViolation("horizon must be >= 0");
  if (!x0.allFinite()) throw ContractViolation("x0 must be finite");
  if (!p.constraint.contains(y0, 1e-12)) throw ContractViolation("y0 lies outside the constraint set");
}

// Shared driver. `step` maps (t, x_{t-1}, y_{t-1}, exact grads at that pair) to
// the next pair and reports inner gradient counts; it returns false when a
// gradient it used was non-finite.
struct StepOut {
  Vector x;
  Vector y;
  long long inner = 0;
};

template <class Step>
RunStatus drive(const MinimaxProblem& p, const SolverConfig& cfg, const Vector& x0, const Vector& y0,
                const IterateVisitor& visit, Step&& step) {
  const auto start = Clock::now();
  RunStatus status;
  IterateRecord rec;
  rec.x = x0;
  rec.y = y0;
  Vector gx = p.grad_x(rec.x, rec.y);
  Vector gy = p.grad_y(rec.x, rec.y);
  for (long long t = 0;; ++t) {
    rec.t = t;
    rec.f_val = p.value(rec.x, rec.y);
    rec.grad_x_norm = gx.norm();
    rec.grad_y_norm = gy.norm();
    if (cfg.record_wall_time) {
      rec.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    }
    status.last_t = t;
    const bool finite = gx.allFinite() && gy.allFinite() && std::isfinite(rec.f_val);
    const bool keep_going = visit(rec);
    if (!finite) {
      status.abort = SolverAbort{t, "non-finite gradient or value at t=" + std::to_string(t)};
      return status;
    }
    if (!keep_going) {
      status.stopped_early = t < cfg.horizon_T;
      return status;
    }
    if (t == cfg.horizon_T) return status;

    StepOut next;
    std::string why;
    if (!step(t + 1, rec.x, rec.y, gx, gy, next, why)) {
      status.abort = SolverAbort{t, why.empty() ? "non-finite stochastic gradient at t=" + std::to_string(t) : why};
      return status;
    }
    rec.x = std::move(next.x);
    rec.y = std::move(next.y);
    rec.inner_grad_evals = next.inner;
    gx = p.grad_x(rec.x, rec.y);
    gy = p.grad_y(rec.x, rec.y);
  }
}

IterateTrace collect(const SolverConfig& cfg,
                     const std::function<RunStatus(const IterateVisitor&)>& stream) {
  IterateTrace trace;
  trace.config = cfg;
  const long long stride = std::max<long long>(1, cfg.record_stride);
  if (stride == 1 && cfg.horizon_T < 50'000'000) trace.records.reserve(static_cast<size_t>(cfg.horizon_T + 1));
  IterateRecord pending;
  bool have_pending = false;
  RunStatus st = stream([&](const IterateRecord& r) {
    if (r.t % stride == 0 || r.t == cfg.horizon_T) {
      trace.records.push_back(r);
      have_pending = false;
    } else {
      pending = r;
      have_pending = true;
    }
    return true;
  });
  // The last visited iterate is always kept so aborted runs show where they stopped.
  if (have_pending) trace.records.push_back(std::move(pending));
  trace.abort = st.abort;
  return trace;
}

// Stochastic projected ascent for SGDmax's inner loop.
InnerMaxResult inner_max_sga(const StochasticOracle& oracle, const Vector& x, const Vector& y_init, double zeta,
                             long long inner_batch, long long cap, RngState& rng) {
  const MinimaxProblem& p = oracle.base;
  const ProblemConstants& c = p.constants;
  const double s2 = oracle.noise_sigma * oracle.noise_sigma;
  const double D = c.diameter_D;
  InnerMaxResult res;
  Vector y = p.constraint.project(y_init);
  if (c.mu > 0.0) {
    const long long M = inner_batch > 0
                            ? inner_batch
                            : std::max<long long>(1, static_cast<long long>(std::ceil(2.0 * s2 * c.kappa() / (c.ell * zeta))));
    const long long n = std::min(inner_max_budget(c, zeta), cap);
    const double step = 1.0 / c.ell;
    for (long long k = 0; k < n; ++k) {
      BatchGradient g = sample_batch_gradient(oracle, x, y, M, rng);
      if (!g.gy.allFinite()) throw ContractViolation("non-finite inner gradient");
      y = p.constraint.project(y + step * g.gy);
      res.iters += M;
    }
    res.y = std::move(y);
    return res;
  }
  const double step = std::min(1.0 / (2.0 * c.ell), zeta / (2.0 * s2));
  const double n_real = std::max({1.0, 4.0 * c.ell * D * D / zeta, 4.0 * s2 * D * D / (zeta * zeta)});
  const long long n = std::min<long long>(cap, static_cast<long long>(std::ceil(std::min(n_real, 9.0e18))));
  Vector avg = Vector::Zero(y.size());
  for (long long k = 0; k < n; ++k) {
    BatchGradient g = sample_batch_gradient(oracle, x, y, 1, rng);
    if (!g.gy.allFinite()) throw ContractViolation("non-finite inner gradient");
    y = p.constraint.project(y + step * g.gy);
    avg += (y - avg) / static_cast<double>(k + 1);
    res.iters += 1;
  }
  res.y = std::move(avg);
  return res;
}

}  // namespace

RunStatus stream_gda(const MinimaxProblem& p, const SolverConfig& cfg, const Vector& x0, const Vector& y0,
                     const IterateVisitor& visit) {
  check_start(p, cfg, x0, y0);
  if (!(cfg.eta_y > 0.0)) throw ContractViolation("eta_y must be > 0");
  return drive(p, cfg, x0, y0, visit,
               [&](long long, const Vector& x, const Vector& y, const Vector& gx, const Vector& gy, StepOut& out,
                   std::string&) {
                 out.x = x - cfg.eta_x * gx;
                 out.y = p.constraint.project(y + cfg.eta_y * gy);
                 return out.x.allFinite() && out.y.allFinite();
               });
}

RunStatus stream_sgda(const StochasticOracle& oracle, const SolverConfig& cfg, const Vector& x0, const Vector& y0,
                      const IterateVisitor& visit) {
  const MinimaxProblem& p = oracle.base;
  check_start(p, cfg, x0, y0);
  if (!(cfg.eta_y > 0.0)) throw ContractViolation("eta_y must be > 0");
  if (cfg.batch_M < 1) throw ContractViolation("batch size must be >= 1");
  RngState rng = make_rng(cfg.seed);
  return drive(p, cfg, x0, y0, visit,
               [&](long long, const Vector& x, const Vector& y, const Vector&, const Vector&, StepOut& out,
                   std::string&) {
                 BatchGradient g = sample_batch_gradient(oracle, x, y, cfg.batch_M, rng);
                 out.x = x - cfg.eta_x * g.gx;
                 out.y = p.constraint.project(y + cfg.eta_y * g.gy);
                 return out.x.allFinite() && out.y.allFinite();
               });
}

RunStatus stream_gdmax(const MinimaxProblem& p, const SolverConfig& cfg, const Vector& x0, const Vector& y0,
                       const IterateVisitor& visit) {
  check_start(p, cfg, x0, y0);
  if (!(cfg.zeta > 0.0)) throw ContractViolation("zeta must be > 0");
  InnerMaxOptions opt;
  opt.iter_cap = cfg.inner_iter_cap;
  return drive(p, cfg, x0, y0, visit,
               [&](long long t, const Vector& x, const Vector& y, const Vector&, const Vector&, StepOut& out,
                   std::string& why) {
                 InnerMaxResult inner;
                 try {
                   inner = inner_max_ga(p, x, y, cfg.zeta, opt);
                 } catch (const Error& e) {
                   why = "max-oracle failed at t=" + std::to_string(t) + ": " + e.what();
                   return false;
                 }
                 Vector g = p.grad_x(x, inner.y);
                 out.x = x - cfg.eta_x * g;
                 out.y = std::move(inner.y);
                 out.inner = inner.iters;
                 return out.x.allFinite();
               });
}

RunStatus stream_sgdmax(const StochasticOracle& oracle, const SolverConfig& cfg, const Vector& x0, const Vector& y0,
                        const IterateVisitor& visit) {
  const MinimaxProblem& p = oracle.base;
  check_start(p, cfg, x0, y0);
  if (!(cfg.zeta > 0.0)) throw ContractViolation("zeta must be > 0");
  if (cfg.batch_M < 1) throw ContractViolation("batch size must be >= 1");
  RngState rng = make_rng(cfg.seed);
  InnerMaxOptions opt;
  opt.iter_cap = cfg.inner_iter_cap;
  return drive(p, cfg, x0, y0, visit,
               [&](long long t, const Vector& x, const Vector& y, const Vector&, const Vector&, StepOut& out,
                   std::string& why) {
                 InnerMaxResult inner;
                 try {
                   inner = oracle.noise_sigma == 0.0
                               ? inner_max_ga(p, x, y, cfg.zeta, opt)
                               : inner_max_sga(oracle, x, y, cfg.zeta, cfg.inner_batch_M, cfg.inner_iter_cap, rng);
                 } catch (const Error& e) {
                   why = "max-oracle failed at t=" + std::to_string(t) + ": " + e.what();
                   return false;
                 }
                 BatchGradient g = sample_batch_gradient(oracle, x, inner.y, cfg.batch_M, rng);
                 out.x = x - cfg.eta_x * g.gx;
                 out.y = std::move(inner.y);
                 out.inner = inner.iters;
                 return out.x.allFinite();
               });
}

IterateTrace run_gda(const MinimaxProblem& p, const SolverConfig& cfg, const Vector& x0, const Vector& y0) {
  return collect(cfg, [&](const IterateVisitor& v) { return stream_gda(p, cfg, x0, y0, v); });
}
IterateTrace run_sgda(const StochasticOracle& o, const SolverConfig& cfg, const Vector& x0, const Vector& y0) {
  return collect(cfg, [&](const IterateVisitor& v) { return stream_sgda(o, cfg, x0, y0, v); });
}
IterateTrace run_gdmax(const MinimaxProblem& p, const SolverConfig& cfg, const Vector& x0, const Vector& y0) {
  return collect(cfg, [&](const IterateVisitor& v) { return stream_gdmax(p, cfg, x0, y0, v); });
}
IterateTrace run_sgdmax(const StochasticOracle& o, const SolverConfig& cfg, const Vector& x0, const Vector& y0) {
  return collect(cfg, [&](const IterateVisitor& v) { return stream_sgdmax(o, cfg, x0, y0, v); });
}

long long inner_max_budget(const ProblemConstants& c, double zeta) {
  if (!(zeta > 0.0)) throw ContractViolation("zeta must be > 0");
  const double D2 = c.diameter_D * c.diameter_D;
  double n = 1.0;
  if (c.mu > 0.0) {
    n = c.kappa() * std::log(c.ell * D2 / zeta);
  } else {
    n = 2.0 * c.ell * D2 / zeta;
  }
  if (!(n > 1.0)) return 1;
  if (n >= 9.0e18) return static_cast<long long>(9.0e18);
  return static_cast<long long>(std::ceil(n));
}

InnerMaxResult inner_max_ga(const MinimaxProblem& p, const Vector& x, const Vector& y_init, double zeta,
                            const InnerMaxOptions& options) {
  if (!(zeta > 0.0)) throw ContractViolation("zeta must be > 0");
  const ProblemConstants& c = p.constants;
  const bool sc = c.mu > 0.0;
  const double step = sc ? 1.0 / c.ell : 1.0 / (2.0 * c.ell);
  const double kappa = sc ? c.kappa() : 0.0;
  const double D = c.diameter_D;
  const long long budget = options.budget > 0 ? options.budget : inner_max_budget(c, zeta);
  const long long n = std::min(budget, options.iter_cap);

  InnerMaxResult res;
  Vector y = p.constraint.project(y_init);
  for (long long k = 0; k < n; ++k) {
    Vector g = p.grad_y(x, y);
    if (!g.allFinite()) throw ContractViolation("non-finite gradient in the max-oracle");
    Vector y_plus = p.constraint.project(y + step * g);
    const double r = (y_plus - y).norm();
    ++res.iters;
    y = std::move(y_plus);
    // Gradient-mapping certificates for the point just produced.
    const double bound = sc ? 4.0 * kappa * kappa * c.ell * r * r : 2.0 * c.ell * r * D;
    if (bound <= zeta) {
      res.certified = true;
      res.gap_bound = sc ? 2.0 * kappa * c.ell * r * r : bound;
      break;
    }
  }
  if (!res.certified && budget > options.iter_cap) {
    throw BudgetExceeded("max-oracle budget " + std::to_string(budget) + " exceeds the cap " +
                             std::to_string(options.iter_cap),
                         x, y, p.value(x, y));
  }
  res.y = std::move(y);
  return res;
}

ExtragradientResult extragradient_scc(const MinimaxProblem& p, const Vector& x0, const Vector& y0, double tol,
                                      const ExtragradientOptions& options) {
  if (!(tol > 0.0)) throw ContractViolation("tol must be > 0");
  p.check_point(x0, y0);
  const double l_res = options.ell > 0.0 ? options.ell : p.constants.ell;
  const double step = options.step > 0.0 ? options.step : 1.0 / (2.0 * p.constants.ell);
  const ConstraintSet& Y = p.constraint;

  ExtragradientResult cur{x0, Y.project(y0), 0, 0.0, 0.0};
  ExtragradientResult best = cur;
  double best_score = std::numeric_limits<double>::infinity();
  for (long long k = 0;; ++k) {
    const Vector gx = p.grad_x(cur.x, cur.y);
    const Vector gy = p.grad_y(cur.x, cur.y);
    if (!gx.allFinite() || !gy.allFinite()) {
      throw BudgetExceeded("extragradient hit a non-finite gradient", best.x, best.y, p.value(best.x, best.y));
    }
    cur.gx_residual = gx.norm();
    cur.y_residual = (Y.project(cur.y + gy / l_res) - cur.y).norm();
    cur.iters = k;
    const double score = std::max(cur.gx_residual, l_res * cur.y_residual);
    if (score < best_score) {
      best_score = score;
      best = cur;
    }
    if (cur.gx_residual <= tol && cur.y_residual <= tol / l_res) return cur;
    if (k >= options.max_iters) {
      throw BudgetExceeded("extragradient iteration cap " + std::to_string(options.max_iters) + " reached",
                           best.x, best.y, p.value(best.x, best.y));
    }
    const Vector xh = cur.x - step * gx;
    const Vector yh = Y.project(cur.y + step * gy);
    cur.x = cur.x - step * p.grad_x(xh, yh);
    cur.y = Y.project(cur.y + step * p.grad_y(xh, yh));
  }
}

SelectedOutput select_output(IterateTrace& trace, RngState& rng) {
  if (trace.records.empty()) throw ContractViolation("cannot select from an empty trace");
  const long long T = trace.records.back().t;
  if (T < 1) throw ContractViolation("selection needs at least one step (T >= 1)");
  std::uniform_int_distribution<long long> pick(1, T);
  const long long idx = pick(rng);
  const IterateRecord* r = trace.find(idx);
  if (!r) throw ContractViolation("selected iterate " + std::to_string(idx) + " was thinned out of the trace");
  trace.selected_index = idx;
  return {r->x, idx};
}

}  // namespace minimax
