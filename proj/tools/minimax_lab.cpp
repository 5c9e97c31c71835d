#include <CLI11.hpp>

#include <iostream>

#include "minimax/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"minimax-lab: two-time-scale GDA/GDmax runs, sweeps, audits and reports"};
  app.require_subcommand(1);

  std::string manifest, out, suite, format = "svg", input;

  auto* run = app.add_subcommand("run", "solve one manifest (one trace per seed)");
  run->add_option("--manifest", manifest, "manifest file")->required();
  run->add_option("--out", out, "output directory (overrides output.dir)");

  auto* sweep = app.add_subcommand("sweep", "run the manifest's parameter grid");
  sweep->add_option("--manifest", manifest, "manifest file")->required();
  sweep->add_option("--out", out, "output directory (overrides output.dir)");

  auto* verify = app.add_subcommand("verify", "run an audit suite");
  verify->add_option("--suite", suite, "nsc, nc, stationarity or all");
  verify->add_option("--manifest", manifest, "optional fault-injection manifest");
  verify->add_option("--out", out, "write audit JSON here");

  auto* report = app.add_subcommand("report", "plot traces and sweep scaling");
  report->add_option("--in,--input", input, "directory of traces / sweep.csv")->required();
  report->add_option("--format", format, "svg or csv");
  report->add_option("--out", out, "output directory (default: the input directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : minimax::kExitUsage;
  }

  if (*run) return minimax::cmd_run(manifest, out, std::cout, std::cerr);
  if (*sweep) return minimax::cmd_sweep(manifest, out, std::cout, std::cerr);
  if (*verify) return minimax::cmd_verify(suite, manifest, out, std::cout, std::cerr);
  if (*report) return minimax::cmd_report(input, format, out, std::cout, std::cerr);
  return minimax::kExitUsage;
}
