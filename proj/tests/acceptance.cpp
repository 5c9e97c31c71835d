// Acceptance checks 1-12. One line per criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "minimax/cli.hpp"
#include "minimax/problems.hpp"
#include "minimax/stationarity.hpp"
#include "minimax/suites.hpp"

using namespace minimax;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int n, bool ok, const std::string& what) {
  std::printf("criterion %2d: %s  %s\n", n, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fixture(const std::string& name) { return std::string(MINIMAX_FIXTURE_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string brief(const AuditResult& a) {
  std::ostringstream o;
  o << a.name << " lhs=" << format_number(a.lhs) << " rhs=" << format_number(a.rhs);
  return o.str();
}

// Runs one criterion; an exception is a failure, not a crash.
void guarded(int n, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(n, false, std::string("threw: ") + e.what());
  }
}

}  // namespace

int main() {
  const MinimaxProblem quad = make_default_quadratic();
  const MinimaxProblem box = make_bilinear_box(1.0, 1);

  guarded(1, [&] {
    const auto t0 = Clock::now();
    const IterateTrace tr = nsc_gda_reference_trace();
    const AuditResult a = audit_rate_bound(tr, quad, BoundKind::NcScGda, RateAuditOptions{});
    const double s = seconds_since(t0);
    report(1, a.passed && s < 5.0, brief(a) + " prefixes=10,100,1000 time=" + format_number(s) + "s");
  });

  guarded(2, [&] {
    const IterateTrace tr = nsc_gda_reference_trace();
    const AuditResult d = audit_nsc_descent(tr, quad);
    const AuditResult r = audit_nsc_delta_recursion(tr, quad);
    SuiteOptions fault;
    fault.stepsize_multiplier = 10.0;
    const IterateTrace bad = nsc_gda_reference_trace(fault);
    const AuditResult fd = audit_nsc_descent(bad, quad);
    const AuditResult fr = audit_nsc_delta_recursion(bad, quad);
    const bool fault_caught = !fd.passed || !fr.passed;
    report(2, d.passed && r.passed && fault_caught,
           "descent=" + std::string(d.passed ? "pass" : "fail") + " recursion=" + (r.passed ? "pass" : "fail") +
               " 10x fixture: descent=" + (fd.passed ? "pass" : "fail") + " recursion=" + (fr.passed ? "pass" : "fail"));
  });

  guarded(3, [&] {
    const auto t0 = Clock::now();
    const auto res = nsc_sgda_rate(20, 0.5, 0.2, 20190611);
    const double s = seconds_since(t0);
    const AuditResult& a = res.front();
    report(3, a.passed && s < 60.0,
           brief(a) + " M=" + a.details["batch_M"].dump() + " seeds=20 time=" + format_number(s) + "s");
  });

  guarded(4, [&] {
    const auto t0 = Clock::now();
    const NcConvergence c = nc_gda_convergence(0.2);
    const double s = seconds_since(t0);
    report(4, c.reached.passed && c.rate.passed && s < 120.0,
           "min|grad Phi_1/2l|=" + format_number(c.reached.lhs) + " at t=" + std::to_string(c.hit_t) +
               " horizon=" + std::to_string(c.horizon) + "; " + brief(c.rate) + " time=" + format_number(s) + "s");
  });

  guarded(5, [&] {
    double worst = 0.0;
    for (int k = 0; k <= 600; ++k) {
      Vector x(1);
      x[0] = -3.0 + 6.0 * k / 600.0;
      const double want = std::clamp(2.0 * x[0], -1.0, 1.0);
      worst = std::max(worst, std::abs(moreau_grad(box, x, 1e-12, ProxMethod::Direct)[0] - want));
    }
    report(5, worst <= 1e-6, "max |moreau_grad - clamp(2x,-1,1)| = " + format_number(worst) + " on 601 points");
  });

  guarded(6, [&] {
    RngState rng = make_rng(6);
    double worst = 0.0;
    const ScalarOfX f = [&](const Vector& x) { return eval_phi(quad, x, 1e-14).phi; };
    const VectorOfX g = [&](const Vector& x) { return grad_phi(quad, x, 1e-10); };
    for (int k = 0; k < 100; ++k) {
      const Vector x = sample_x(quad, SamplingRegion{3.0}, rng);
      worst = std::max(worst, finite_diff_check(f, g, x, 1e-5 * (1.0 + x.norm())));
    }
    report(6, worst <= 1e-4, "max relative error " + format_number(worst) + " at 100 points");
  });

  guarded(7, [&] {
    RngState rng = make_rng(7);
    const AuditResult a = check_ystar_lipschitz(quad, 1000, rng, SamplingRegion{20.0});
    report(7, a.passed, "max ratio " + format_number(a.lhs) + " vs kappa(1+1e-6) = " + format_number(a.rhs));
  });

  guarded(8, [&] {
    const auto res = nsc_gdmax_rate(0.1);
    const AuditResult& rate = res.back();
    report(8, rate.passed, brief(rate) + " zeta=" + rate.details["zeta"].dump());
  });

  guarded(9, [&] {
    const NcConvergence ref = nc_gda_convergence(0.2);
    const EqualStepContrast c = equal_stepsize_contrast(0.1, 0.2, ref.horizon);
    const bool never_reached = c.first_hit_t < 0;
    report(9, never_reached && c.boundary_hit,
           "min|grad Phi_1/2l|=" + format_number(c.min_moreau_grad) + " first reached 0.2 at t=" +
               std::to_string(c.first_hit_t) + " (horizon " + std::to_string(ref.horizon) + "), boundary hit at t=" +
               std::to_string(c.boundary_t) + ", max|x|=" + format_number(c.max_abs_x));
  });

  guarded(10, [&] {
    const auto t0 = Clock::now();
    const fs::path dir = fs::temp_directory_path() / "minimax_acceptance_sweep";
    fs::remove_all(dir);
    std::ostringstream sink;
    const int rc = cmd_sweep(fixture("nsc_sweep.manifest"), dir.string(), sink, std::cerr);
    const CsvTable t = read_csv_table((dir / "sweep.csv").string());
    const int ce = t.column("epsilon"), ci = t.column("iters_to_epsilon_avg");
    std::vector<double> xs, ys;
    std::string pts;
    for (const auto& row : t.rows) {
      xs.push_back(row[ce]);
      ys.push_back(row[ci]);
      pts += " " + format_number(row[ce]) + "->" + format_number(row[ci]);
    }
    const double slope = loglog_slope(xs, ys);
    const double s = seconds_since(t0);
    report(10, rc == 0 && std::abs(slope + 2.0) <= 0.4 && s < 60.0,
           "slope=" + format_number(slope) + pts + " time=" + format_number(s) + "s");
  });

  guarded(11, [&] {
    bool ok = true;
    std::string names;
    for (const AuditResult& a : translation_checks()) {
      ok = ok && a.passed;
      names += " " + a.name + (a.passed ? "" : "(FAIL)");
    }
    report(11, ok, "checks:" + names);
  });

  guarded(12, [&] {
    bool same = true;
    std::string detail;
    for (const char* m : {"nc_bilinear_gda.manifest", "nsc_quadratic_sgda.manifest", "robust_regression_gdmax.manifest"}) {
      const fs::path a = fs::temp_directory_path() / "minimax_acceptance_det_a";
      const fs::path b = fs::temp_directory_path() / "minimax_acceptance_det_b";
      fs::remove_all(a);
      fs::remove_all(b);
      std::ostringstream sink;
      cmd_run(fixture(m), a.string(), sink, std::cerr);
      cmd_run(fixture(m), b.string(), sink, std::cerr);
      int files = 0;
      for (const auto& e : fs::directory_iterator(a)) {
        if (e.path().extension() != ".csv") continue;
        ++files;
        const std::string x = slurp(e.path()), y = slurp(b / e.path().filename());
        if (x.empty() || x != y) same = false;
      }
      if (files == 0) same = false;
      detail += " " + std::string(m) + ":" + std::to_string(files) + " trace(s)";
    }
    report(12, same, std::string(same ? "byte-identical" : "traces differ") + detail);
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
