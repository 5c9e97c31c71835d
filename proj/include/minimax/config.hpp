#pragma once

#include <cstdint>
#include <string>

#include "minimax/problem.hpp"

namespace minimax {

enum class Regime { NcScDet, NcScStoch, NcCDet, NcCStoch };
// Two-time-scale (S)GDA or (S)GDmax with a max-oracle.
enum class Family { TwoTimeScale, MaxOracle };

bool is_stochastic(Regime r);
bool is_strongly_concave(Regime r);
std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

struct SolverConfig {
  double eta_x = 0.0;
  double eta_y = 0.0;
  long long horizon_T = 0;
  long long batch_M = 1;
  double zeta = 0.0;  // max-oracle tolerance (GDmax family)
  std::uint64_t seed = 0;
  Regime regime = Regime::NcScDet;

  // Stochastic inner max-oracle batch (SGDmax, NC-SC); 0 = derive from the lemma.
  long long inner_batch_M = 0;
  // Keep every record_stride-th iterate (plus the last). 1 keeps all.
  long long record_stride = 1;
  bool record_wall_time = false;
  // Hard cap on any single inner max-oracle call.
  long long inner_iter_cap = 10'000'000;
};

// Theorem schedules. delta_phi_estimate stands in for Phi(x0) - min Phi (or the
// envelope analogue in the NC-C regime), delta0_estimate for Phi(x0) - f(x0,y0).
SolverConfig theorem_stepsizes(Regime regime, Family family, const ProblemConstants& c, double epsilon,
                               double delta_phi_estimate, double delta0_estimate = 0.0);

// The NC-SC SGDA batch max{1, 26 kappa sigma^2 / eps^2}, rounded up.
long long nsc_sgda_batch(const ProblemConstants& c, double epsilon);

}  // namespace minimax
