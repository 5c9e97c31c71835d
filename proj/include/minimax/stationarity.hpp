#pragma once

#include <string>

#include "minimax/problem.hpp"
#include "minimax/solvers.hpp"

namespace minimax {

struct PhiValue {
  double phi = 0.0;
  Vector y_star;
};

// Phi(x) within tol (the returned value is f(x, y) for the oracle's y, so it
// never exceeds the true max).
PhiValue eval_phi(const MinimaxProblem& problem, const Vector& x, double tol);

// Danskin gradient grad_x f(x, y_hat) with l * |y_hat - y*| <= tol.
Vector grad_phi(const MinimaxProblem& problem, const Vector& x, double tol);

enum class ProxMethod { Auto, Direct, Extragradient };

struct ProxResult {
  Vector prox;
  Vector y;              // paired y from the saddle solve (empty for the direct path)
  ProxMethod method = ProxMethod::Auto;
  long long iters = 0;
};

// argmin_w Phi(w) + l |w - x|^2.
ProxResult moreau_prox_full(const MinimaxProblem& problem, const Vector& x, double tol,
                            ProxMethod method = ProxMethod::Auto);
Vector moreau_prox(const MinimaxProblem& problem, const Vector& x, double tol, ProxMethod method = ProxMethod::Auto);
// 2 l (x - prox(x)).
Vector moreau_grad(const MinimaxProblem& problem, const Vector& x, double tol, ProxMethod method = ProxMethod::Auto);
// Phi_{1/2l}(x) = Phi(prox) + l |prox - x|^2.
double moreau_value(const MinimaxProblem& problem, const Vector& x, double tol,
                    ProxMethod method = ProxMethod::Auto);

struct JointResiduals {
  double gx_norm = 0.0;
  double y_residual = 0.0;
};

// |grad_x f(x,y)| and |P(y + grad_y f / l) - y|.
JointResiduals check_joint_stationarity(const MinimaxProblem& problem, const Vector& x, const Vector& y);

struct Translation {
  Vector x;
  Vector y;
  long long gradient_count = 0;
  JointResiduals residuals;
  double phi_measure = 0.0;  // |grad Phi(x_hat)| or |grad Phi_{1/2l}(x_hat)|
  double bound_gx = 0.0;     // proof-implied bound on residuals.gx_norm
  double bound_y = 0.0;      // proof-implied bound on residuals.y_residual
  bool within_bounds = false;
};

// Phi-stationary x_hat -> jointly stationary pair.
Translation translate_phi_to_joint(const MinimaxProblem& problem, const Vector& x_hat, double epsilon,
                                   double inner_tol = 1e-10);

enum class Notion { GradPhi, MoreauGrad, Joint };
std::string to_string(Notion n);

struct StationarityReport {
  Vector point_x;
  Notion notion = Notion::GradPhi;
  double epsilon_achieved = 0.0;  // the computed measure
  double implied_epsilon = 0.0;   // epsilon the pair residuals certify
  double bound = 0.0;             // proof-implied bound on epsilon_achieved
  bool holds = false;
  Vector certificate_y;
  JointResiduals residuals;
  double inner_tolerance = 0.0;
};

// Joint pair -> certificate on the Phi-based measure at x_hat.
StationarityReport check_converse_translation(const MinimaxProblem& problem, const Vector& x_hat, const Vector& y_hat,
                                              double inner_tol = 1e-10);

struct DiagnosticsOptions {
  long long stride = 0;  // 0: every iterate up to 1e4 records, else ceil(T/1e4)
  double tol = 1e-8;
  bool moreau = true;    // NC-C: compute envelope quantities
  bool pairs = false;    // also annotate t-1 of every strided t (per-step audits)
};

long long default_stride(long long T);

// Annotate trace records with phi, |grad Phi|, delta (NC-SC), gap and the
// envelope gradient/value (NC-C). Closed forms are used when present.
void annotate_trace(IterateTrace& trace, const MinimaxProblem& problem, const DiagnosticsOptions& options = {});
// Single-record form used by streaming callers.
void annotate_record(IterateRecord& record, const MinimaxProblem& problem, const DiagnosticsOptions& options = {});

}  // namespace minimax
