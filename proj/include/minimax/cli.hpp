#pragma once

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "minimax/io.hpp"
#include "minimax/problem.hpp"

namespace minimax {

enum ExitCode { kExitOk = 0, kExitAuditFailure = 1, kExitUsage = 2, kExitAbort = 3 };

enum class Algorithm { Gda, Sgda, Gdmax, Sgdmax };
std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

enum class StopRule { None, FirstHit, MeanSquare };

// Everything a manifest fixes about a run except the per-grid-point values.
struct RunSpec {
  std::string problem_id;
  MinimaxProblem problem;
  Algorithm algorithm = Algorithm::Gda;
  bool theorem_schedule = true;
  double epsilon = 0.0;
  double sigma = 0.0;
  std::vector<long long> seeds{0};
  double stepsize_multiplier = 1.0;
  Vector x0, y0;
  StopRule stop = StopRule::None;
  std::optional<double> delta_phi;
  std::optional<double> delta0;
  std::optional<long long> horizon;
  // Manual schedule values (also overrides on top of the theorem schedule).
  std::optional<double> eta_x, eta_y, zeta;
  std::optional<long long> batch;
  std::string out_dir = "out";
  long long record_stride = 0;  // 0 = default_stride(T)
  long long diag_stride = 0;    // 0 = 1 with closed forms, else default_stride(T)
  bool wall_time = false;
};

RunSpec parse_run_spec(const Manifest& m);

// The solver configuration for one (epsilon, sigma, seed, multiplier) point.
SolverConfig build_config(const RunSpec& spec, double epsilon, double sigma, long long seed, double multiplier);

struct RunOutcome {
  SolverConfig config;
  long long iterations_run = 0;
  bool aborted = false;
  std::string abort_reason;
  double min_measure = 0.0;
  double final_measure = 0.0;
  long long iters_to_epsilon = -1;      // first measured t with measure <= epsilon
  long long iters_to_epsilon_avg = -1;  // first T with mean-square measure <= epsilon^2
  double max_abs_x = 0.0;
  double max_abs_x_late = 0.0;  // over t >= T/2
  bool y_boundary_hit = false;
  bool diverged = false;
  std::optional<long long> selected_index;
  double wall_ms_total = 0.0;
  nlohmann::json summary;
};

// One solve; writes the trace CSV when trace_path is nonempty.
RunOutcome execute_run(const RunSpec& spec, double epsilon, double sigma, long long seed, double multiplier,
                       const std::string& trace_path);

int cmd_run(const std::string& manifest_path, const std::string& out_dir, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::string& manifest_path, const std::string& out_dir, std::ostream& out, std::ostream& err);
// manifest_path may be empty; a manifest can inject verify.* faults.
int cmd_verify(const std::string& suite, const std::string& manifest_path, const std::string& out_dir,
               std::ostream& out, std::ostream& err);
int cmd_report(const std::string& input_dir, const std::string& format, const std::string& out_dir,
               std::ostream& out, std::ostream& err);

// Worker count for sweeps: MINIMAX_LAB_THREADS if set, else the hardware count.
unsigned sweep_workers();

}  // namespace minimax
