#include "minimax/cli.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "minimax/problems.hpp"
#include "minimax/stationarity.hpp"
#include "minimax/suites.hpp"

namespace minimax {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Gda: return "gda";
    case Algorithm::Sgda: return "sgda";
    case Algorithm::Gdmax: return "gdmax";
    case Algorithm::Sgdmax: return "sgdmax";
  }
  return "unknown";
}

Algorithm algorithm_from_string(const std::string& s) {
  for (Algorithm a : {Algorithm::Gda, Algorithm::Sgda, Algorithm::Gdmax, Algorithm::Sgdmax}) {
    if (to_string(a) == s) return a;
  }
  throw ManifestError("unknown algorithm '" + s + "' (expected gda, sgda, gdmax or sgdmax)");
}

namespace {

const std::set<std::string> kRunKeys{
    "problem.id",          "problem.scale",         "problem.dim",           "problem.a_diag",
    "problem.mu",          "problem.radius",        "problem.dataset",       "problem.gamma",
    "problem.perturb_radius", "algorithm.name",     "algorithm.schedule",    "algorithm.eta_x",
    "algorithm.eta_y",     "algorithm.horizon",     "algorithm.batch",       "algorithm.zeta",
    "algorithm.stepsize_multiplier", "algorithm.delta_phi", "algorithm.delta0", "run.epsilon",
    "run.sigma",           "run.seeds",             "run.x0",                "run.y0",
    "run.stop_at_epsilon", "output.dir",            "output.wall_time",      "output.record_stride",
    "output.traces",       "diagnostics.stride",    "sweep.epsilon",         "sweep.sigma",
    "sweep.seeds",         "sweep.stepsize_multiplier"};

const std::set<std::string> kVerifyKeys{"verify.stepsize_multiplier", "verify.eta_x_multiplier", "verify.seed",
                                        "verify.suite"};

void check_keys(const Manifest& m, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : m.values()) {
    if (!allowed.count(k)) throw ManifestError("unknown manifest key '" + k + "'");
  }
}

Vector to_vector(const std::vector<double>& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

MinimaxProblem build_problem(const Manifest& m, const std::string& id) {
  if (id == "quadratic") {
    std::vector<double> a = m.numbers("problem.a_diag");
    if (a.empty()) a = {1.0, -3.0};
    const Eigen::Index n = static_cast<Eigen::Index>(a.size());
    const Matrix A = to_vector(a).asDiagonal();
    return make_quadratic_nsc(A, Matrix::Identity(n, n), m.number_or("problem.mu", 1.0),
                              m.number_or("problem.radius", 10.0));
  }
  if (id == "bilinear_box") {
    const long long dim = m.integer_or("problem.dim", 1);
    if (dim < 1) throw ManifestError("problem.dim must be >= 1");
    return make_bilinear_box(m.number_or("problem.scale", 1.0), static_cast<int>(dim));
  }
  if (id == "robust_regression") {
    RegressionData data;
    if (auto path = m.get("problem.dataset")) {
      fs::path p(*path);
      if (p.is_relative()) p = fs::path(m.base_dir()) / p;
      data = load_regression_csv(p.string());
    } else {
      data = default_regression_data();
    }
    return make_robust_regression(data.features, data.targets, m.number_or("problem.gamma", 5.0),
                                  m.number_or("problem.perturb_radius", 0.5));
  }
  throw ManifestError("unknown problem.id '" + id + "' (expected quadratic, bilinear_box or robust_regression)");
}

bool is_stochastic(Algorithm a) { return a == Algorithm::Sgda || a == Algorithm::Sgdmax; }
bool is_max_oracle(Algorithm a) { return a == Algorithm::Gdmax || a == Algorithm::Sgdmax; }

double phi_value(const MinimaxProblem& p, const Vector& x) {
  if (p.has_phi()) return p.ground_truth->phi(x);
  return eval_phi(p, x, 1e-10).phi;
}

bool on_boundary(const ConstraintSet& s, const Vector& y) {
  constexpr double tol = 1e-12;
  switch (s.kind()) {
    case ConstraintSet::Kind::Box:
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] <= s.lo()[i] + tol || y[i] >= s.hi()[i] - tol) return true;
      }
      return false;
    case ConstraintSet::Kind::Ball:
      return (y - s.centers().row(0).transpose()).norm() >= s.radius() * (1.0 - tol);
    case ConstraintSet::Kind::Simplex:
      return (y.array() <= tol).any();
    case ConstraintSet::Kind::ProductOfBalls: {
      const Eigen::Index d = s.centers().cols();
      for (Eigen::Index i = 0; i < s.centers().rows(); ++i) {
        if ((y.segment(i * d, d) - s.centers().row(i).transpose()).norm() >= s.radius() * (1.0 - tol)) return true;
      }
      return false;
    }
  }
  return false;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json config_json(const SolverConfig& c) {
  return {{"eta_x", c.eta_x},         {"eta_y", c.eta_y}, {"horizon_T", c.horizon_T},
          {"batch_M", c.batch_M},     {"zeta", c.zeta},   {"seed", c.seed},
          {"regime", to_string(c.regime)}, {"inner_batch_M", c.inner_batch_M}};
}

void print_usage_error(std::ostream& err, const std::exception& e) { err << "error: " << e.what() << '\n'; }

}  // namespace

RunSpec parse_run_spec(const Manifest& m) {
  check_keys(m, kRunKeys);
  RunSpec s;
  s.problem_id = m.get_or("problem.id", "");
  if (s.problem_id.empty()) throw ManifestError("missing required key 'problem.id'");
  s.problem = build_problem(m, s.problem_id);
  s.algorithm = algorithm_from_string(m.get_or("algorithm.name", "gda"));
  const std::string schedule = m.get_or("algorithm.schedule", "theorem");
  if (schedule != "theorem" && schedule != "manual") {
    throw ManifestError("algorithm.schedule must be theorem or manual, not '" + schedule + "'");
  }
  s.theorem_schedule = schedule == "theorem";
  s.epsilon = m.number_or("run.epsilon", 0.0);
  s.sigma = m.number_or("run.sigma", 0.0);
  if (s.sigma < 0.0) throw ManifestError("run.sigma must be >= 0");
  if (m.has("run.seeds")) s.seeds = m.integers("run.seeds");
  if (s.seeds.empty()) throw ManifestError("run.seeds must list at least one seed");
  s.stepsize_multiplier = m.number_or("algorithm.stepsize_multiplier", 1.0);

  s.x0 = m.has("run.x0") ? to_vector(m.numbers("run.x0")) : Vector::Ones(s.problem.dim_x);
  s.y0 = m.has("run.y0") ? to_vector(m.numbers("run.y0")) : s.problem.constraint.center();
  if (s.x0.size() != s.problem.dim_x) throw ManifestError(fmt::format("run.x0 needs {} entries", s.problem.dim_x));
  if (s.y0.size() != s.problem.dim_y) throw ManifestError(fmt::format("run.y0 needs {} entries", s.problem.dim_y));

  const std::string stop = m.get_or("run.stop_at_epsilon", "none");
  if (stop == "none") {
    s.stop = StopRule::None;
  } else if (stop == "first_hit") {
    s.stop = StopRule::FirstHit;
  } else if (stop == "mean_square") {
    s.stop = StopRule::MeanSquare;
  } else {
    throw ManifestError("run.stop_at_epsilon must be none, first_hit or mean_square");
  }

  auto opt_num = [&](const char* k) -> std::optional<double> {
    if (m.has(k)) return m.number(k);
    return std::nullopt;
  };
  auto opt_int = [&](const char* k) -> std::optional<long long> {
    if (m.has(k)) return m.integer_or(k, 0);
    return std::nullopt;
  };
  s.delta_phi = opt_num("algorithm.delta_phi");
  s.delta0 = opt_num("algorithm.delta0");
  s.horizon = opt_int("algorithm.horizon");
  s.eta_x = opt_num("algorithm.eta_x");
  s.eta_y = opt_num("algorithm.eta_y");
  s.zeta = opt_num("algorithm.zeta");
  s.batch = opt_int("algorithm.batch");
  if (s.horizon && *s.horizon < 0) throw ManifestError("algorithm.horizon must be >= 0");
  if (s.batch && *s.batch < 1) throw ManifestError("algorithm.batch must be >= 1");

  s.out_dir = m.get_or("output.dir", "out");
  s.wall_time = m.flag_or("output.wall_time", false);
  s.record_stride = m.integer_or("output.record_stride", 0);
  s.diag_stride = m.integer_or("diagnostics.stride", 0);
  if (s.record_stride < 0 || s.diag_stride < 0) throw ManifestError("strides must be >= 0");
  if (s.theorem_schedule && !m.has("run.epsilon") && !m.has("sweep.epsilon")) {
    throw ManifestError("the theorem schedule needs run.epsilon");
  }
  return s;
}

SolverConfig build_config(const RunSpec& spec, double epsilon, double sigma, long long seed, double multiplier) {
  const MinimaxProblem& p = spec.problem;
  const bool nsc = p.constants.strongly_concave();
  const bool stoch = is_stochastic(spec.algorithm);
  if (!stoch && sigma > 0.0) throw ManifestError("run.sigma > 0 needs a stochastic algorithm (sgda or sgdmax)");
  const Regime regime = nsc ? (stoch ? Regime::NcScStoch : Regime::NcScDet) : (stoch ? Regime::NcCStoch : Regime::NcCDet);
  SolverConfig cfg;
  if (spec.theorem_schedule) {
    if (!(epsilon > 0.0)) throw ManifestError("the theorem schedule needs epsilon > 0");
    ProblemConstants c = p.constants;
    c.sigma = sigma;
    double dphi = 0.0;
    if (spec.delta_phi) {
      dphi = *spec.delta_phi;
    } else if (auto pmin = p.phi_min(); pmin && (nsc || p.has_moreau())) {
      const double start = nsc ? phi_value(p, spec.x0) : p.ground_truth->moreau_value(spec.x0);
      dphi = std::max(0.0, start - *pmin);
    } else {
      throw ManifestError("algorithm.delta_phi is required: this problem has no known minimum of Phi");
    }
    const double d0 = spec.delta0 ? *spec.delta0 : std::max(0.0, phi_value(p, spec.x0) - p.value(spec.x0, spec.y0));
    cfg = theorem_stepsizes(regime, is_max_oracle(spec.algorithm) ? Family::MaxOracle : Family::TwoTimeScale, c,
                            epsilon, dphi, d0);
  } else {
    cfg.regime = regime;
    if (!spec.eta_x || !spec.horizon) throw ManifestError("the manual schedule needs algorithm.eta_x and algorithm.horizon");
    if (!is_max_oracle(spec.algorithm) && !spec.eta_y) throw ManifestError("the manual schedule needs algorithm.eta_y");
    if (is_max_oracle(spec.algorithm) && !spec.zeta) throw ManifestError("the manual schedule needs algorithm.zeta");
    cfg.eta_y = spec.eta_y.value_or(1.0 / p.constants.ell);
  }
  if (spec.eta_x) cfg.eta_x = *spec.eta_x;
  if (spec.eta_y) cfg.eta_y = *spec.eta_y;
  if (spec.zeta) cfg.zeta = *spec.zeta;
  if (spec.horizon) cfg.horizon_T = *spec.horizon;
  if (spec.batch) cfg.batch_M = *spec.batch;
  cfg.eta_x *= multiplier;
  cfg.eta_y *= multiplier;
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.record_wall_time = spec.wall_time;
  return cfg;
}

RunOutcome execute_run(const RunSpec& spec, double epsilon, double sigma, long long seed, double multiplier,
                       const std::string& trace_path) {
  const MinimaxProblem& p = spec.problem;
  RunOutcome out;
  out.config = build_config(spec, epsilon, sigma, seed, multiplier);
  const SolverConfig& cfg = out.config;
  const bool nsc = p.constants.strongly_concave();
  const bool closed = nsc ? (p.has_grad_phi() && p.has_phi() && p.has_y_star()) : (p.has_moreau() && p.has_phi());
  const long long T = cfg.horizon_T;
  const long long ds = spec.diag_stride > 0 ? spec.diag_stride : (closed ? 1 : default_stride(T));
  const long long rs = spec.record_stride > 0 ? spec.record_stride : default_stride(T);
  DiagnosticsOptions dopt;
  dopt.moreau = !nsc;

  std::optional<TraceCsvWriter> writer;
  if (!trace_path.empty()) writer.emplace(trace_path, p.dim_x, p.dim_y);

  const double x0_inf = spec.x0.size() ? spec.x0.cwiseAbs().maxCoeff() : 0.0;
  out.min_measure = std::numeric_limits<double>::infinity();
  out.final_measure = std::numeric_limits<double>::quiet_NaN();
  double sum_sq = 0.0;
  long long n_measured = 0;
  IterateRecord pending;
  bool pending_written = true;
  bool pending_measured = false;

  auto measure_of = [&](const IterateRecord& r) { return nsc ? r.diag.grad_phi_norm : r.diag.moreau_grad_norm; };

  const IterateVisitor visit = [&](const IterateRecord& rec) {
    IterateRecord r = rec;
    bool stop = false;
    const bool measured = r.t % ds == 0;
    if (measured) {
      annotate_record(r, p, dopt);
      const double m = measure_of(r);
      out.min_measure = std::min(out.min_measure, m);
      sum_sq += m * m;
      ++n_measured;
      if (epsilon > 0.0) {
        if (out.iters_to_epsilon < 0 && m <= epsilon) out.iters_to_epsilon = r.t;
        if (out.iters_to_epsilon_avg < 0 && sum_sq / static_cast<double>(n_measured) <= epsilon * epsilon) {
          out.iters_to_epsilon_avg = r.t;
        }
        if (spec.stop == StopRule::FirstHit && out.iters_to_epsilon >= 0) stop = true;
        if (spec.stop == StopRule::MeanSquare && out.iters_to_epsilon_avg >= 0) stop = true;
      }
    }
    const double xi = r.x.cwiseAbs().maxCoeff();
    if (std::isfinite(xi)) {
      out.max_abs_x = std::max(out.max_abs_x, xi);
      if (2 * r.t >= T) out.max_abs_x_late = std::max(out.max_abs_x_late, xi);
    } else {
      out.max_abs_x = std::numeric_limits<double>::infinity();
      out.max_abs_x_late = std::numeric_limits<double>::infinity();
    }
    if (r.t > 0 && !out.y_boundary_hit && on_boundary(p.constraint, r.y)) out.y_boundary_hit = true;
    const bool write_now = r.t % rs == 0 || r.t == T;
    if (writer && write_now) writer->write(r);
    pending = std::move(r);
    pending_written = write_now;
    pending_measured = measured;
    return !stop;
  };

  RunStatus st;
  if (spec.algorithm == Algorithm::Gda) {
    st = stream_gda(p, cfg, spec.x0, spec.y0, visit);
  } else if (spec.algorithm == Algorithm::Gdmax) {
    st = stream_gdmax(p, cfg, spec.x0, spec.y0, visit);
  } else {
    const StochasticOracle o = add_gaussian_noise(p, sigma);
    st = spec.algorithm == Algorithm::Sgda ? stream_sgda(o, cfg, spec.x0, spec.y0, visit)
                                           : stream_sgdmax(o, cfg, spec.x0, spec.y0, visit);
  }
  // The last iterate is always written and measured.
  if (!pending_measured && pending.x.allFinite()) {
    annotate_record(pending, p, dopt);
    const double m = measure_of(pending);
    out.min_measure = std::min(out.min_measure, m);
  }
  if (writer && !pending_written) writer->write(pending);
  if (writer) writer->flush();
  out.final_measure = pending_measured || pending.x.allFinite() ? measure_of(pending) : out.final_measure;

  out.iterations_run = st.last_t;
  out.aborted = st.abort.has_value();
  if (st.abort) out.abort_reason = st.abort->reason;
  out.diverged = out.aborted || (out.max_abs_x_late >= x0_inf && out.max_abs_x_late > 0.0);
  if (st.last_t >= 1) {
    RngState rng = make_rng(static_cast<std::uint64_t>(seed) ^ 0x9e3779b97f4a7c15ULL);
    out.selected_index = std::uniform_int_distribution<long long>(1, st.last_t)(rng);
  }
  if (cfg.record_wall_time) out.wall_ms_total = pending.wall_ms;
  if (!std::isfinite(out.min_measure)) out.min_measure = std::numeric_limits<double>::quiet_NaN();

  json s;
  s["problem"] = spec.problem_id;
  s["algorithm"] = to_string(spec.algorithm);
  s["config"] = config_json(cfg);
  s["seed"] = seed;
  s["epsilon"] = epsilon;
  s["sigma"] = sigma;
  s["stepsize_multiplier"] = multiplier;
  s["min_grad_phi"] = nsc ? num(out.min_measure) : json(nullptr);
  s["min_moreau_grad"] = nsc ? json(nullptr) : num(out.min_measure);
  s["final_measure"] = num(out.final_measure);
  s["iters_to_epsilon"] = out.iters_to_epsilon >= 0 ? json(out.iters_to_epsilon) : json(nullptr);
  s["iters_to_epsilon_avg"] = out.iters_to_epsilon_avg >= 0 ? json(out.iters_to_epsilon_avg) : json(nullptr);
  s["iterations_run"] = out.iterations_run;
  s["aborted"] = out.aborted;
  if (out.aborted) s["abort_reason"] = out.abort_reason;
  s["selected_index"] = out.selected_index ? json(*out.selected_index) : json(nullptr);
  s["wall_ms_total"] = cfg.record_wall_time ? num(out.wall_ms_total) : json(nullptr);
  out.summary = std::move(s);
  return out;
}

int cmd_run(const std::string& manifest_path, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  RunSpec spec;
  try {
    const Manifest m = Manifest::load(manifest_path);
    for (const auto& [k, v] : m.values()) {
      if (k.rfind("sweep.", 0) == 0) throw ManifestError("sweep.* keys belong to `sweep`, not `run`");
    }
    spec = parse_run_spec(m);
    if (!out_dir.empty()) spec.out_dir = out_dir;
    fs::create_directories(spec.out_dir);
  } catch (const std::exception& e) {
    print_usage_error(err, e);
    return kExitUsage;
  }
  bool aborted = false;
  const bool many = spec.seeds.size() > 1;
  for (long long seed : spec.seeds) {
    const std::string suffix = many ? fmt::format("_seed{}", seed) : "";
    const fs::path trace = fs::path(spec.out_dir) / ("trace" + suffix + ".csv");
    const fs::path summary = fs::path(spec.out_dir) / ("summary" + suffix + ".json");
    RunOutcome r;
    try {
      r = execute_run(spec, spec.epsilon, spec.sigma, seed, spec.stepsize_multiplier, trace.string());
    } catch (const std::exception& e) {
      print_usage_error(err, e);
      return kExitUsage;
    }
    std::ofstream(summary) << r.summary.dump(2) << '\n';
    out << fmt::format("seed {}: T={} iterations={} min_measure={} iters_to_epsilon={}{}\n", seed,
                       r.config.horizon_T, r.iterations_run, format_number(r.min_measure), r.iters_to_epsilon,
                       r.aborted ? " ABORTED: " + r.abort_reason : "");
    aborted = aborted || r.aborted;
  }
  return aborted ? kExitAbort : kExitOk;
}

unsigned sweep_workers() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MINIMAX_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) n = static_cast<unsigned>(v);
  }
  return n;
}

int cmd_sweep(const std::string& manifest_path, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  RunSpec spec;
  struct Point {
    double epsilon, sigma;
    long long seed;
    double mult;
  };
  std::vector<Point> grid;
  bool traces = false;
  try {
    const Manifest m = Manifest::load(manifest_path);
    spec = parse_run_spec(m);
    if (!out_dir.empty()) spec.out_dir = out_dir;
    traces = m.flag_or("output.traces", false);
    std::vector<double> eps = m.numbers("sweep.epsilon");
    if (eps.empty()) eps = {spec.epsilon};
    std::vector<double> sig = m.numbers("sweep.sigma");
    if (sig.empty()) sig = {spec.sigma};
    std::vector<long long> seeds = m.integers("sweep.seeds");
    if (seeds.empty()) seeds = spec.seeds;
    std::vector<double> mult = m.numbers("sweep.stepsize_multiplier");
    if (mult.empty()) mult = {spec.stepsize_multiplier};
    for (double e : eps)
      for (double s : sig)
        for (long long sd : seeds)
          for (double k : mult) grid.push_back({e, s, sd, k});
    fs::create_directories(spec.out_dir);
  } catch (const std::exception& e) {
    print_usage_error(err, e);
    return kExitUsage;
  }

  std::vector<RunOutcome> results(grid.size());
  std::vector<std::string> errors(grid.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < grid.size(); i = next++) {
      const Point& g = grid[i];
      const std::string trace =
          traces ? (fs::path(spec.out_dir) /
                    fmt::format("{}_{}_seed{}_g{}.csv", spec.problem_id, to_string(spec.algorithm), g.seed, i))
                       .string()
                 : std::string();
      try {
        results[i] = execute_run(spec, g.epsilon, g.sigma, g.seed, g.mult, trace);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned n = std::min<unsigned>(sweep_workers(), static_cast<unsigned>(std::max<size_t>(1, grid.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (size_t i = 0; i < grid.size(); ++i) {
    if (!errors[i].empty()) {
      err << fmt::format("error: grid point {}: {}\n", i, errors[i]);
      return kExitUsage;
    }
  }
  std::ofstream csv(fs::path(spec.out_dir) / "sweep.csv");
  csv << "grid_index,epsilon,sigma,seed,stepsize_multiplier,eta_x,eta_y,horizon_T,iterations_run,min_measure,"
         "final_measure,iters_to_epsilon,iters_to_epsilon_avg,max_abs_x,max_abs_x_late,y_boundary_hit,diverged,"
         "aborted\n";
  bool aborted = false;
  auto opt = [](long long v) { return v >= 0 ? std::to_string(v) : std::string(); };
  for (size_t i = 0; i < grid.size(); ++i) {
    const Point& g = grid[i];
    const RunOutcome& r = results[i];
    csv << i << ',' << format_number(g.epsilon) << ',' << format_number(g.sigma) << ',' << g.seed << ','
        << format_number(g.mult) << ',' << format_number(r.config.eta_x) << ',' << format_number(r.config.eta_y) << ','
        << r.config.horizon_T << ',' << r.iterations_run << ',' << format_number(r.min_measure) << ','
        << format_number(r.final_measure) << ',' << opt(r.iters_to_epsilon) << ',' << opt(r.iters_to_epsilon_avg)
        << ',' << format_number(r.max_abs_x) << ',' << format_number(r.max_abs_x_late) << ','
        << (r.y_boundary_hit ? 1 : 0) << ',' << (r.diverged ? 1 : 0) << ',' << (r.aborted ? 1 : 0) << '\n';
    aborted = aborted || r.aborted;
  }
  out << fmt::format("sweep: {} grid points on {} worker(s) -> {}\n", grid.size(), n,
                     (fs::path(spec.out_dir) / "sweep.csv").string());
  return aborted ? kExitAbort : kExitOk;
}

int cmd_verify(const std::string& suite, const std::string& manifest_path, const std::string& out_dir,
               std::ostream& out, std::ostream& err) {
  SuiteOptions opt;
  std::string name = suite;
  try {
    if (!manifest_path.empty()) {
      const Manifest m = Manifest::load(manifest_path);
      check_keys(m, kVerifyKeys);
      opt.stepsize_multiplier = m.number_or("verify.stepsize_multiplier", 1.0);
      opt.eta_x_multiplier = m.number_or("verify.eta_x_multiplier", 1.0);
      opt.seed = static_cast<std::uint64_t>(m.integer_or("verify.seed", static_cast<long long>(opt.seed)));
      if (name.empty()) name = m.get_or("verify.suite", "");
    }
    if (name.empty()) name = "all";
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
      throw InvalidParameter("unknown suite '" + name + "' (expected nsc, nc, stationarity or all)");
    }
  } catch (const std::exception& e) {
    print_usage_error(err, e);
    return kExitUsage;
  }
  std::vector<AuditResult> results;
  try {
    results = run_suite(name, opt);
  } catch (const std::exception& e) {
    err << "error: suite aborted: " << e.what() << '\n';
    return kExitAbort;
  }
  bool all = true;
  json arr = json::array();
  for (const AuditResult& a : results) {
    out << fmt::format("{:<28} {}  lhs={} rhs={}\n", a.name, a.passed ? "PASS" : "FAIL", format_number(a.lhs),
                       format_number(a.rhs));
    all = all && a.passed;
    arr.push_back(to_json(a));
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream(fs::path(out_dir) / ("verify_" + name + ".json")) << arr.dump(2) << '\n';
  }
  if (!all) {
    for (const AuditResult& a : results) {
      if (!a.passed) out << "failed: " << a.name << '\n';
    }
  }
  return all ? kExitOk : kExitAuditFailure;
}

// ---- report -------------------------------------------------------------

namespace {

struct Series {
  std::vector<double> x, y;
};

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

// Minimal line/point plot; log axes use decade ticks.
std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const Series& s, bool log_x, bool log_y, bool points, const std::string& note) {
  const double W = 640, H = 420, ml = 80, mr = 20, mt = 40, mb = 60;
  auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (size_t i = 0; i < s.x.size(); ++i) {
    x0 = std::min(x0, tx(s.x[i]));
    x1 = std::max(x1, tx(s.x[i]));
    y0 = std::min(y0, ty(s.y[i]));
    y1 = std::max(y1, ty(s.y[i]));
  }
  if (log_y) {
    y0 = std::floor(y0);
    y1 = std::ceil(y1);
  }
  if (log_x) {
    x0 = std::floor(x0);
    x1 = std::ceil(x1);
  }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  auto px = [&](double v) { return ml + (tx(v) - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double v) { return H - mb - (ty(v) - y0) / (y1 - y0) * (H - mt - mb); };
  std::ostringstream o;
  o << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">)", W, H, W, H)
    << '\n';
  o << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
  o << fmt::format(R"(<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>)", W / 2, esc(title)) << '\n';
  o << fmt::format(R"(<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>)", ml, H - mb, W - mr, H - mb) << '\n';
  o << fmt::format(R"(<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>)", ml, mt, ml, H - mb) << '\n';
  // ticks
  auto yt = [&](double lv) { return H - mb - (lv - y0) / (y1 - y0) * (H - mt - mb); };
  auto xt = [&](double lv) { return ml + (lv - x0) / (x1 - x0) * (W - ml - mr); };
  const int ny = log_y ? static_cast<int>(y1 - y0) : 5;
  for (int k = 0; k <= ny; ++k) {
    const double lv = y0 + (y1 - y0) * k / ny;
    const std::string lab = log_y ? fmt::format("1e{}", static_cast<int>(std::lround(lv))) : fmt::format("{:.3g}", lv);
    o << fmt::format(R"(<line x1="{}" y1="{:.2f}" x2="{}" y2="{:.2f}" stroke="#ccc"/>)", ml, yt(lv), W - mr, yt(lv))
      << fmt::format(R"(<text x="{}" y="{:.2f}" text-anchor="end" font-size="11">{}</text>)", ml - 6, yt(lv) + 4, lab)
      << '\n';
  }
  const int nx = log_x ? static_cast<int>(x1 - x0) : 5;
  for (int k = 0; k <= nx; ++k) {
    const double lv = x0 + (x1 - x0) * k / nx;
    const std::string lab = log_x ? fmt::format("1e{}", static_cast<int>(std::lround(lv))) : fmt::format("{:.4g}", lv);
    o << fmt::format(R"(<text x="{:.2f}" y="{}" text-anchor="middle" font-size="11">{}</text>)", xt(lv), H - mb + 18,
                     lab)
      << '\n';
  }
  o << fmt::format(R"(<text x="{}" y="{}" text-anchor="middle" font-size="13">{}</text>)", (ml + W - mr) / 2, H - 15,
                   esc(xlabel))
    << '\n';
  o << fmt::format(R"svg(<text x="18" y="{}" text-anchor="middle" font-size="13" transform="rotate(-90 18 {})">{}</text>)svg",
                   (mt + H - mb) / 2, (mt + H - mb) / 2, esc(ylabel))
    << '\n';
  std::ostringstream path;
  for (size_t i = 0; i < s.x.size(); ++i) {
    path << (i ? " L" : "M") << fmt::format("{:.2f},{:.2f}", px(s.x[i]), py(s.y[i]));
  }
  o << fmt::format(R"(<path d="{}" fill="none" stroke="#1f5fa8" stroke-width="1.5"/>)", path.str()) << '\n';
  if (points) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      o << fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="4" fill="#c0392b"/>)", px(s.x[i]), py(s.y[i])) << '\n';
    }
  }
  if (!note.empty()) {
    o << fmt::format(R"(<text x="{}" y="{}" font-size="13" fill="#c0392b">{}</text>)", ml + 12, mt + 18, esc(note))
      << '\n';
  }
  o << "</svg>\n";
  return o.str();
}

struct TraceSummary {
  std::string file;
  std::string measure;
  long long rows = 0;
  double min_measure = 0.0, final_measure = 0.0;
};

}  // namespace

int cmd_report(const std::string& input_dir, const std::string& format, const std::string& out_dir, std::ostream& out,
               std::ostream& err) {
  if (format != "svg" && format != "csv") {
    err << "error: --format must be svg or csv\n";
    return kExitUsage;
  }
  if (!fs::is_directory(input_dir)) {
    err << "error: '" << input_dir << "' is not a directory\n";
    return kExitUsage;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(input_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".csv" && e.path().filename() != "report.csv") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  const fs::path dest = out_dir.empty() ? fs::path(input_dir) : fs::path(out_dir);
  fs::create_directories(dest);

  std::vector<TraceSummary> traces;
  std::optional<std::pair<std::vector<double>, std::vector<double>>> scaling;
  double slope = std::numeric_limits<double>::quiet_NaN();
  for (const fs::path& f : files) {
    CsvTable tab;
    try {
      tab = read_csv_table(f.string());
    } catch (const std::exception& e) {
      err << "warning: skipping " << f.filename().string() << ": " << e.what() << '\n';
      continue;
    }
    if (f.filename() == "sweep.csv") {
      const int ce = tab.column("epsilon");
      int ci = tab.column("iters_to_epsilon_avg");
      if (ci < 0) ci = tab.column("iters_to_epsilon");
      if (ce < 0 || ci < 0) {
        err << "warning: skipping sweep.csv: missing epsilon/iteration columns\n";
        continue;
      }
      std::map<double, std::pair<double, int>> agg;
      for (const auto& row : tab.rows) {
        if (std::isfinite(row[ci]) && row[ci] > 0) {
          agg[row[ce]].first += row[ci];
          agg[row[ce]].second += 1;
        }
      }
      std::vector<double> xs, ys;
      for (const auto& [e, v] : agg) {
        xs.push_back(e);
        ys.push_back(v.first / v.second);
      }
      if (xs.size() >= 2) slope = loglog_slope(xs, ys);
      scaling = std::make_pair(xs, ys);
      continue;
    }
    if (tab.header.empty() || tab.header[0] != "t") {
      err << "warning: skipping " << f.filename().string() << ": not a trace\n";
      continue;
    }
    std::string measure;
    for (const char* c : {"moreau_grad_norm", "grad_phi_norm", "grad_x_norm"}) {
      const int k = tab.column(c);
      if (k >= 0 && std::any_of(tab.rows.begin(), tab.rows.end(), [k](const auto& r) { return std::isfinite(r[k]); })) {
        measure = c;
        break;
      }
    }
    if (measure.empty()) {
      err << "warning: skipping " << f.filename().string() << ": no stationarity column\n";
      continue;
    }
    const int k = tab.column(measure);
    Series s;
    TraceSummary ts{f.filename().string(), measure, static_cast<long long>(tab.rows.size()),
                    std::numeric_limits<double>::infinity(), std::numeric_limits<double>::quiet_NaN()};
    for (const auto& r : tab.rows) {
      if (!std::isfinite(r[k])) continue;
      ts.min_measure = std::min(ts.min_measure, r[k]);
      ts.final_measure = r[k];
      if (r[k] > 0.0) {
        // The x-axis is t + 1 so that t = 0 fits on a log scale.
        s.x.push_back(r[0] + 1.0);
        s.y.push_back(r[k]);
      }
    }
    if (format == "svg" && !s.x.empty()) {
      std::ofstream(dest / (f.stem().string() + ".svg"))
          << svg_plot(f.stem().string(), "iteration t + 1", measure, s, true, true, false, "");
    }
    traces.push_back(ts);
  }
  if (traces.empty() && !scaling) {
    err << "error: no traces or sweep results in '" << input_dir << "'\n";
    return kExitUsage;
  }
  if (format == "svg") {
    std::ofstream md(dest / "index.md");
    md << "# minimax-lab report\n\n";
    if (!traces.empty()) {
      md << "| run | measure | rows | min | final |\n|---|---|---|---|---|\n";
      for (const auto& t : traces) {
        const std::string stem = fs::path(t.file).stem().string();
        md << fmt::format("| [{}]({}.svg) | {} | {} | {} | {} |\n", stem, stem, t.measure, t.rows,
                          format_number(t.min_measure), format_number(t.final_measure));
      }
    }
    if (scaling && scaling->first.size() >= 2) {
      Series s{scaling->first, scaling->second};
      std::ofstream(dest / "scaling.svg") << svg_plot("iterations to epsilon", "epsilon", "iterations", s, true, true,
                                                      true, fmt::format("fitted slope = {:.3f}", slope));
      md << fmt::format("\n## Scaling\n\n![scaling](scaling.svg)\n\nLeast-squares log-log slope: {:.3f}\n", slope);
    }
  } else {
    std::ofstream csv(dest / "report.csv");
    csv << "file,measure,rows,min_measure,final_measure\n";
    for (const auto& t : traces) {
      csv << t.file << ',' << t.measure << ',' << t.rows << ',' << format_number(t.min_measure) << ','
          << format_number(t.final_measure) << '\n';
    }
    if (scaling) {
      csv << "sweep.csv,slope,," << format_number(slope) << ",\n";
    }
  }
  out << fmt::format("report: {} trace(s){} -> {}\n", traces.size(), scaling ? " + scaling" : "", dest.string());
  return kExitOk;
}

}  // namespace minimax
