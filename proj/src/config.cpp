#include "minimax/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace minimax {

bool is_stochastic(Regime r) { return r == Regime::NcScStoch || r == Regime::NcCStoch; }
bool is_strongly_concave(Regime r) { return r == Regime::NcScDet || r == Regime::NcScStoch; }

std::string to_string(Regime r) {
  switch (r) {
    case Regime::NcScDet: return "nc-sc-det";
    case Regime::NcScStoch: return "nc-sc-stoch";
    case Regime::NcCDet: return "nc-c-det";
    case Regime::NcCStoch: return "nc-c-stoch";
  }
  return "unknown";
}

Regime regime_from_string(const std::string& s) {
  for (Regime r : {Regime::NcScDet, Regime::NcScStoch, Regime::NcCDet, Regime::NcCStoch}) {
    if (to_string(r) == s) return r;
  }
  throw InvalidParameter("unknown regime '" + s + "'");
}

namespace {

long long ceil_count(double v) {
  if (!std::isfinite(v) || v >= 9.0e18) throw InvalidParameter("schedule quantity overflows a 64-bit count");
  return std::max<long long>(1, static_cast<long long>(std::ceil(v)));
}

// Smallest T >= 0 with numerator/(T+1) <= budget.
long long horizon_for(double numerator, double budget) {
  if (!(budget > 0.0)) throw InvalidParameter("no accuracy budget left for the horizon");
  if (numerator <= 0.0) return 0;
  return std::max<long long>(0, ceil_count(numerator / budget) - 1);
}

}  // namespace

long long nsc_sgda_batch(const ProblemConstants& c, double epsilon) {
  return std::max<long long>(1, ceil_count(26.0 * c.kappa() * c.sigma * c.sigma / (epsilon * epsilon)));
}

SolverConfig theorem_stepsizes(Regime regime, Family family, const ProblemConstants& c, double epsilon,
                               double delta_phi_estimate, double delta0_estimate) {
  if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be > 0");
  if (!(c.ell > 0.0)) throw InvalidRegime("ell must be > 0");
  if (delta_phi_estimate < 0.0 || delta0_estimate < 0.0) throw InvalidParameter("gap estimates must be >= 0");
  const bool stoch = is_stochastic(regime);
  const double l = c.ell;
  const double D = c.diameter_D;
  const double L = c.lip_L;
  const double s2 = stoch ? c.sigma * c.sigma : 0.0;
  const double e2 = epsilon * epsilon;

  SolverConfig cfg;
  cfg.regime = regime;
  cfg.batch_M = 1;

  if (is_strongly_concave(regime)) {
    if (!(c.mu > 0.0)) throw InvalidRegime("NC-SC schedule needs mu > 0");
    if (c.mu > c.ell) throw InvalidRegime("mu must not exceed ell");
    const double k = c.kappa();
    if (family == Family::TwoTimeScale) {
      cfg.eta_x = 1.0 / (16.0 * (k + 1.0) * (k + 1.0) * l);
      cfg.eta_y = 1.0 / l;
      const double C = 128.0 * k * k * l * delta_phi_estimate + 5.0 * k * l * l * D * D;
      double budget = e2;
      if (stoch) {
        cfg.batch_M = nsc_sgda_batch(c, epsilon);
        budget -= 13.0 * s2 * k / static_cast<double>(cfg.batch_M);
      }
      cfg.horizon_T = horizon_for(C, budget);
    } else {
      cfg.eta_x = 1.0 / (8.0 * k * l);
      cfg.eta_y = 1.0 / l;
      cfg.zeta = e2 / (6.0 * l);
      double budget = e2 - 3.0 * l * cfg.zeta;
      if (stoch) {
        cfg.batch_M = std::max<long long>(1, ceil_count(12.0 * k * s2 / e2));
        cfg.inner_batch_M = std::max<long long>(1, ceil_count(2.0 * s2 * k / (l * cfg.zeta)));
        budget -= s2 / (2.0 * static_cast<double>(cfg.batch_M));
      }
      cfg.horizon_T = horizon_for(32.0 * k * l * delta_phi_estimate, budget);
    }
    return cfg;
  }

  if (!(L > 0.0) || !(D > 0.0)) throw InvalidRegime("NC-C schedule needs L > 0 and D > 0");
  if (family == Family::TwoTimeScale) {
    if (!stoch) {
      cfg.eta_x = std::min(e2 / (16.0 * l * L * L), e2 * e2 / (4096.0 * l * l * l * L * L * D * D));
      cfg.eta_y = 1.0 / l;
      const double num = 4.0 * delta_phi_estimate / cfg.eta_x + 8.0 * l * delta0_estimate;
      cfg.horizon_T = horizon_for(num, e2 / 2.0);
    } else {
      const double root = std::sqrt(L * L + s2);
      double ex = std::min(e2 / (16.0 * l * (L * L + s2)), e2 * e2 / (8192.0 * l * l * l * D * D * L * root));
      double ey = 1.0 / (2.0 * l);
      if (s2 > 0.0) {
        ex = std::min(ex, e2 * e2 * e2 / (65536.0 * l * l * l * D * D * s2 * L * root));
        ey = std::min(ey, e2 / (16.0 * l * s2));
      }
      cfg.eta_x = ex;
      cfg.eta_y = ey;
      const double num = 4.0 * delta_phi_estimate / cfg.eta_x + 8.0 * l * delta0_estimate;
      cfg.horizon_T = horizon_for(num, e2 / 4.0);
    }
  } else {
    // The proof's final display needs 4 eta_x l L^2 = eps^2/3, i.e. the factor 12.
    const double Lt2 = L * L + s2;
    cfg.eta_x = e2 / (12.0 * l * Lt2);
    cfg.eta_y = 1.0 / (2.0 * l);
    cfg.zeta = e2 / (24.0 * l);
    if (stoch && s2 > 0.0) cfg.eta_y = std::min(cfg.eta_y, cfg.zeta / (2.0 * s2));
    cfg.inner_batch_M = 1;
    const double num = 48.0 * l * Lt2 * delta_phi_estimate / e2;
    cfg.horizon_T = horizon_for(num, e2 - 8.0 * l * cfg.zeta - e2 / 3.0);
  }
  return cfg;
}

}  // namespace minimax
