#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "minimax/config.hpp"
#include "minimax/problem.hpp"

namespace minimax {

inline constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

// Filled lazily by the stationarity module; NaN means "not computed".
struct Diagnostics {
  double phi = kUnset;
  double grad_phi_norm = kUnset;
  double moreau_grad_norm = kUnset;
  double moreau_value = kUnset;
  double delta = kUnset;  // ||y*(x_t) - y_t||^2
  double gap = kUnset;    // Phi(x_t) - f(x_t, y_t)
};

struct IterateRecord {
  long long t = 0;
  Vector x;
  Vector y;
  double f_val = 0.0;
  double grad_x_norm = 0.0;
  double grad_y_norm = 0.0;
  long long inner_grad_evals = 0;  // GDmax family: gradients spent in the max-oracle
  Diagnostics diag;
  double wall_ms = kUnset;
};

struct SolverAbort {
  long long index = 0;  // t of the step whose gradient went non-finite
  std::string reason;
};

struct IterateTrace {
  std::vector<IterateRecord> records;
  SolverConfig config;
  std::optional<long long> selected_index;
  std::optional<SolverAbort> abort;

  // Record with iteration index t, if stored.
  const IterateRecord* find(long long t) const;
  IterateRecord* find(long long t);
};

// Return false to stop the run after this record.
using IterateVisitor = std::function<bool(const IterateRecord&)>;

struct RunStatus {
  long long last_t = 0;
  bool stopped_early = false;
  std::optional<SolverAbort> abort;
};

// Streaming forms visit every iterate (t = 0..T) without storing them.
RunStatus stream_gda(const MinimaxProblem& problem, const SolverConfig& config, const Vector& x0,
                     const Vector& y0, const IterateVisitor& visit);
RunStatus stream_sgda(const StochasticOracle& oracle, const SolverConfig& config, const Vector& x0,
                      const Vector& y0, const IterateVisitor& visit);
RunStatus stream_gdmax(const MinimaxProblem& problem, const SolverConfig& config, const Vector& x0,
                       const Vector& y0, const IterateVisitor& visit);
RunStatus stream_sgdmax(const StochasticOracle& oracle, const SolverConfig& config, const Vector& x0,
                        const Vector& y0, const IterateVisitor& visit);

IterateTrace run_gda(const MinimaxProblem& problem, const SolverConfig& config, const Vector& x0,
                     const Vector& y0);
IterateTrace run_sgda(const StochasticOracle& oracle, const SolverConfig& config, const Vector& x0,
                      const Vector& y0);
IterateTrace run_gdmax(const MinimaxProblem& problem, const SolverConfig& config, const Vector& x0,
                       const Vector& y0);
IterateTrace run_sgdmax(const StochasticOracle& oracle, const SolverConfig& config, const Vector& x0,
                        const Vector& y0);

struct InnerMaxResult {
  Vector y;
  long long iters = 0;
  bool certified = false;  // stopped by the gradient-mapping certificate
  double gap_bound = kUnset;  // certified bound on max f(x,.) - f(x,y), when certified
};

struct InnerMaxOptions {
  long long iter_cap = 10'000'000;
  // Override the lemma budget (0 = use it).
  long long budget = 0;
};

// Projected gradient ascent on f(x, .) to accuracy zeta. Step 1/l when mu > 0,
// 1/(2l) otherwise.
InnerMaxResult inner_max_ga(const MinimaxProblem& problem, const Vector& x, const Vector& y_init, double zeta,
                            const InnerMaxOptions& options = {});

// The lemma budget used by inner_max_ga.
long long inner_max_budget(const ProblemConstants& c, double zeta);

struct ExtragradientOptions {
  long long max_iters = 1'000'000;
  double step = 0.0;   // 0 = 1/(2 l_reg)
  double ell = 0.0;    // l in the y-residual P(y + g/l) - y; 0 = problem_reg's ell
};

struct ExtragradientResult {
  Vector x;
  Vector y;
  long long iters = 0;
  double gx_residual = 0.0;
  double y_residual = 0.0;
};

ExtragradientResult extragradient_scc(const MinimaxProblem& problem_reg, const Vector& x0, const Vector& y0,
                                      double tol, const ExtragradientOptions& options = {});

// Uniform draw of x_hat from {x_t : t = 1..T}; the index is stored on the trace.
struct SelectedOutput {
  Vector x_hat;
  long long index = 0;
};
SelectedOutput select_output(IterateTrace& trace, RngState& rng);

}  // namespace minimax
