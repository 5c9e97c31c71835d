#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "minimax/problem.hpp"
#include "minimax/solvers.hpp"

namespace minimax {

// passed <=> lhs <= rhs + slack (absolute slack, stored alongside).
struct AuditResult {
  std::string name;
  bool passed = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  double slack = 0.0;
  nlohmann::json details = nlohmann::json::object();
};

nlohmann::json to_json(const AuditResult& a);

// Max over coordinates of |central difference - grad_i| / (1 + |grad_i|).
double finite_diff_check(const ScalarOfX& fn, const VectorOfX& grad, const Vector& x, double h);

// Where samplers draw x; y is always drawn from the constraint set.
struct SamplingRegion {
  double x_radius = 1.0;
};

Vector sample_x(const MinimaxProblem& problem, const SamplingRegion& region, RngState& rng);

struct ConstantEstimates {
  double ell_hat = 0.0;
  double L_hat = 0.0;
  double mu_hat = 0.0;
};

ConstantEstimates estimate_constants(const MinimaxProblem& problem, int n_samples, RngState& rng,
                                     const SamplingRegion& region = {});

AuditResult check_ystar_lipschitz(const MinimaxProblem& problem, int n_pairs, RngState& rng,
                                  const SamplingRegion& region = {});

struct WeakConvexityOptions {
  double modulus = 0.0;  // 0 = the problem's ell
  double tol = 1e-10;    // eval_phi tolerance when Phi has no closed form
  SamplingRegion region{3.0};
};

AuditResult check_weak_convexity(const MinimaxProblem& problem, int n_pairs, RngState& rng,
                                 const WeakConvexityOptions& options = {});

struct StepAuditOptions {
  long long stride = 1;  // audit the pairs (t-1, t) for t on this grid
  double tol = 1e-8;     // inner tolerance for numerically computed diagnostics
};

AuditResult audit_nsc_descent(const IterateTrace& trace, const MinimaxProblem& problem,
                              const StepAuditOptions& options = {});
AuditResult audit_nsc_delta_recursion(const IterateTrace& trace, const MinimaxProblem& problem,
                                      const StepAuditOptions& options = {});
AuditResult audit_gdmax_descent(const IterateTrace& trace, const MinimaxProblem& problem,
                                const StepAuditOptions& options = {});
AuditResult audit_nc_descent(const IterateTrace& trace, const MinimaxProblem& problem,
                             const StepAuditOptions& options = {});

enum class BoundKind { NcScGda, NcScSgda, NcScGdmax, NcScSgdmax, NcCGda, NcCSgda, NcCGdmax };
std::string to_string(BoundKind k);
bool uses_moreau(BoundKind k);

// Running prefix statistics for one run: sums of the squared stationarity
// measure and the running minimum of the potential (Phi or the envelope).
class RateAccumulator {
 public:
  explicit RateAccumulator(std::vector<long long> prefixes);

  // measure: |grad Phi| or |grad Phi_{1/2l}|; potential: Phi or Phi_{1/2l};
  // phi and f_val are only read at t = 0 (for Delta_0 = Phi(x0) - f(x0,y0)).
  void add(long long t, double measure, double potential, double phi, double f_val);

  struct Prefix {
    long long T = 0;
    double mean_sq = 0.0;
    double min_potential = 0.0;  // over t <= T+1 (t <= T if T+1 never arrived)
    bool has_next = false;
  };

  const std::vector<Prefix>& prefixes() const { return done_; }
  double potential0() const { return potential0_; }
  double gap0() const { return gap0_; }
  long long next_expected() const { return next_t_; }

 private:
  std::vector<long long> grid_;
  std::vector<Prefix> done_;
  size_t next_ = 0;
  long long next_t_ = 0;
  double sum_ = 0.0;
  double min_pot_ = std::numeric_limits<double>::infinity();
  double potential0_ = 0.0;
  double gap0_ = 0.0;
};

struct RateAuditOptions {
  std::vector<long long> prefixes{10, 100, 1000};
  double epsilon = 0.0;         // NC-C bounds and the GDmax zeta terms
  double sigma = 0.0;           // stochastic kinds
  double stochastic_slack = 2.0;  // multiplies the sigma-dependent term
  double slack = 1e-8;          // additive
  double tol = 1e-8;            // diagnostics tolerance for numeric paths
};

// Expectation over runs estimated by the mean across accumulators.
AuditResult audit_rate_bound(const std::vector<RateAccumulator>& runs, const MinimaxProblem& problem,
                             const SolverConfig& config, BoundKind kind, const RateAuditOptions& options);

// Trace form: each trace must hold consecutive records 0..T.
AuditResult audit_rate_bound(const std::vector<IterateTrace>& traces, const MinimaxProblem& problem, BoundKind kind,
                             const RateAuditOptions& options);
AuditResult audit_rate_bound(const IterateTrace& trace, const MinimaxProblem& problem, BoundKind kind,
                             const RateAuditOptions& options);

// The record's diagnostics, computing whatever is missing.
Diagnostics diagnostics_for(const IterateRecord& rec, const MinimaxProblem& problem, double tol, bool moreau);

}  // namespace minimax
