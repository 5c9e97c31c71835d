#pragma once

#include <string>
#include <vector>

#include "minimax/verify.hpp"

namespace minimax {

// Fault injection for the NC-SC GDA run (negative fixtures).
struct SuiteOptions {
  double stepsize_multiplier = 1.0;  // scales eta_x and eta_y
  double eta_x_multiplier = 1.0;     // scales eta_x only
  std::uint64_t seed = 20190611;
};

std::vector<AuditResult> suite_nsc(const SuiteOptions& options = {});
std::vector<AuditResult> suite_nc(const SuiteOptions& options = {});
std::vector<AuditResult> suite_stationarity(const SuiteOptions& options = {});

// nsc | nc | stationarity | all. Throws InvalidParameter for anything else.
std::vector<AuditResult> run_suite(const std::string& name, const SuiteOptions& options = {});
const std::vector<std::string>& suite_names();

// Building blocks shared with the acceptance binary.

// NC-SC GDA on the default quadratic from (1,1), T = 1001, every iterate annotated.
IterateTrace nsc_gda_reference_trace(const SuiteOptions& options = {});

std::vector<AuditResult> nsc_sgda_rate(int seeds, double sigma, double epsilon, std::uint64_t base_seed);
std::vector<AuditResult> nsc_gdmax_rate(double epsilon);

struct NcConvergence {
  AuditResult reached;  // min_t |grad Phi_{1/2l}(x_t)| <= epsilon before the horizon
  AuditResult rate;     // prefix averages against the NC-C GDA bound
  long long horizon = 0;
  long long hit_t = -1;
  long long iterations = 0;
};

// Theorem-stepsize GDA on the dim-1 bilinear box from (1,1). Streams until the
// first epsilon hit (or the horizon) with the closed-form envelope.
NcConvergence nc_gda_convergence(double epsilon);

struct EqualStepContrast {
  double min_moreau_grad = 0.0;
  long long first_hit_t = -1;  // first t with |grad Phi_{1/2l}(x_t)| <= epsilon, -1 if none
  long long iterations = 0;
  double max_abs_x = 0.0;
  bool boundary_hit = false;
  long long boundary_t = -1;
};

// Equal-stepsize GDA (eta_x = eta_y = eta) on the dim-1 bilinear box from (1,1),
// run for at most `iterations` steps; stops early once both events have occurred.
EqualStepContrast equal_stepsize_contrast(double eta, double epsilon, long long iterations);

std::vector<AuditResult> translation_checks();

// Iterations-to-epsilon scaling of NC-SC GDA on the default quadratic.
struct ScalingPoint {
  double epsilon = 0.0;
  long long iters_to_epsilon = -1;
};
struct ScalingResult {
  std::vector<ScalingPoint> points;
  double slope = 0.0;
};
ScalingResult nsc_gda_scaling(const std::vector<double>& epsilons);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace minimax
