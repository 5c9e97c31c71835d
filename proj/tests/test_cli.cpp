#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "minimax/cli.hpp"

using namespace minimax;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) { return std::string(MINIMAX_FIXTURE_DIR) + "/" + name; }

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("minimax_cli_" + name);
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, AlgorithmNames) {
  for (Algorithm a : {Algorithm::Gda, Algorithm::Sgda, Algorithm::Gdmax, Algorithm::Sgdmax}) {
    EXPECT_EQ(algorithm_from_string(to_string(a)), a);
  }
}

TEST(Cli, UnknownManifestKeyExitsTwo) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run(fixture("bad_key.manifest"), fresh_dir("bad").string(), out, err), kExitUsage);
  EXPECT_NE(err.str().find("algorithm.nmae"), std::string::npos);
}

TEST(Cli, MissingManifestExitsTwo) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run("/nonexistent.manifest", fresh_dir("missing").string(), out, err), kExitUsage);
  EXPECT_EQ(cmd_sweep("/nonexistent.manifest", fresh_dir("missing").string(), out, err), kExitUsage);
}

TEST(Cli, RunWritesTraceAndSummary) {
  const fs::path d = fresh_dir("run");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(fixture("nc_bilinear_gda.manifest"), d.string(), out, err), kExitOk) << err.str();
  EXPECT_TRUE(fs::exists(d / "trace.csv"));
  const auto s = nlohmann::json::parse(slurp(d / "summary.json"));
  EXPECT_GT(s["iters_to_epsilon"].get<long long>(), 0);
}

TEST(Cli, RunIsDeterministic) {
  const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(fixture("nsc_quadratic_sgda.manifest"), a.string(), out, err), kExitOk) << err.str();
  ASSERT_EQ(cmd_run(fixture("nsc_quadratic_sgda.manifest"), b.string(), out, err), kExitOk);
  for (const char* f : {"trace_seed1.csv", "trace_seed2.csv"}) {
    const std::string x = slurp(a / f);
    EXPECT_FALSE(x.empty());
    EXPECT_EQ(x, slurp(b / f));
  }
  EXPECT_NE(slurp(a / "trace_seed1.csv"), slurp(a / "trace_seed2.csv"));
}

TEST(Cli, DivergentRunExitsThree) {
  const fs::path d = fresh_dir("diverge");
  fs::create_directories(d);
  std::ofstream(d / "m.manifest") << "problem.id = quadratic\nproblem.a_diag = 1, -3\nalgorithm.name = gda\n"
                                     "algorithm.schedule = manual\nalgorithm.eta_x = 1e6\nalgorithm.eta_y = 0.1\n"
                                     "algorithm.horizon = 1000\nrun.x0 = 1, 1\n";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run((d / "m.manifest").string(), (d / "out").string(), out, err), kExitAbort);
  const auto s = nlohmann::json::parse(slurp(d / "out" / "summary.json"));
  EXPECT_TRUE(s.contains("abort_reason"));
}

TEST(Cli, SweepFlagsEqualStepDivergence) {
  const fs::path d = fresh_dir("sweep");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_sweep(fixture("bilinear_equal_sweep.manifest"), d.string(), out, err), kExitOk) << err.str();
  const CsvTable t = read_csv_table((d / "sweep.csv").string());
  ASSERT_EQ(t.rows.size(), 2u);
  const int cm = t.column("stepsize_multiplier"), cd = t.column("diverged");
  for (const auto& row : t.rows) {
    if (row[cm] == 10.0) EXPECT_EQ(row[cd], 1.0);
  }
}

TEST(Cli, VerifyFaultManifestExitsOne) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify("nsc", fixture("nsc_fault.manifest"), "", out, err), kExitAuditFailure);
  EXPECT_NE(out.str().find("FAIL"), std::string::npos);
}

TEST(Cli, VerifyUnknownSuiteExitsTwo) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify("everything", "", "", out, err), kExitUsage);
}

TEST(Cli, VerifyWritesJson) {
  const fs::path d = fresh_dir("verify");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_verify("stationarity", "", d.string(), out, err), kExitOk) << out.str();
  const auto j = nlohmann::json::parse(slurp(d / "verify_stationarity.json"));
  EXPECT_FALSE(j.empty());
}

TEST(Cli, ReportProducesPlotsAndIndex) {
  const fs::path d = fresh_dir("report");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(fixture("nc_bilinear_gda.manifest"), (d / "run").string(), out, err), kExitOk);
  std::ofstream(d / "run" / "junk.csv") << "not,a\ncsv\n";
  ASSERT_EQ(cmd_report((d / "run").string(), "svg", (d / "rep").string(), out, err), kExitOk) << err.str();
  EXPECT_TRUE(fs::exists(d / "rep" / "trace.svg"));
  EXPECT_TRUE(fs::exists(d / "rep" / "index.md"));
  EXPECT_NE(err.str().find("junk.csv"), std::string::npos);
  ASSERT_EQ(cmd_report((d / "run").string(), "csv", (d / "rep").string(), out, err), kExitOk);
  EXPECT_TRUE(fs::exists(d / "rep" / "report.csv"));
}

TEST(Cli, ReportOnEmptyDirectoryExitsTwo) {
  const fs::path d = fresh_dir("empty");
  fs::create_directories(d);
  std::ostringstream out, err;
  EXPECT_EQ(cmd_report(d.string(), "svg", (d / "rep").string(), out, err), kExitUsage);
  EXPECT_EQ(cmd_report(d.string(), "png", (d / "rep").string(), out, err), kExitUsage);
}
