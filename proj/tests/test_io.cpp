#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "minimax/io.hpp"
#include "minimax/problems.hpp"

using namespace minimax;
namespace fs = std::filesystem;

TEST(Io, FormatNumberRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 1e300, 9.765625e-8}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
  EXPECT_EQ(format_number(std::nan("")), "");
  EXPECT_EQ(format_number(2.0), "2");
}

TEST(Io, ManifestParsesListsAndComments) {
  const Manifest m = Manifest::parse(
      "# comment\nproblem.id = quadratic\nrun.x0 = 1, -0.5\nrun.seeds = 1,2,3\noutput.wall_time = true\n");
  EXPECT_EQ(*m.get("problem.id"), "quadratic");
  EXPECT_EQ(m.numbers("run.x0"), (std::vector<double>{1.0, -0.5}));
  EXPECT_EQ(m.integers("run.seeds"), (std::vector<long long>{1, 2, 3}));
  EXPECT_TRUE(m.flag_or("output.wall_time", false));
  EXPECT_EQ(m.number_or("run.sigma", 0.25), 0.25);
}

TEST(Io, ManifestErrorsNameTheProblem) {
  EXPECT_THROW(Manifest::parse("problem.id quadratic\n"), ManifestError);
  EXPECT_THROW(Manifest::parse("a.b = 1\na.b = 2\n"), ManifestError);
  EXPECT_THROW(Manifest::parse("nokey = 1\n"), ManifestError);
  const Manifest m = Manifest::parse("run.epsilon = abc\nrun.seeds = 1.5\n");
  EXPECT_THROW(m.number("run.epsilon"), ManifestError);
  EXPECT_THROW(m.integers("run.seeds"), ManifestError);
  EXPECT_THROW(Manifest::load("/nonexistent/x.manifest"), ManifestError);
  try {
    Manifest::parse("x.y = 1\nbroken\n", "f.manifest");
    FAIL();
  } catch (const ManifestError& e) {
    EXPECT_NE(std::string(e.what()).find("f.manifest:2"), std::string::npos);
  }
}

TEST(Io, TraceCsvRoundTrip) {
  const MinimaxProblem b = make_bilinear_box(1.0, 1);
  SolverConfig c;
  c.eta_x = 0.1;
  c.eta_y = 0.1;
  c.horizon_T = 5;
  Vector x0(1), y0(1);
  x0 << 1.0;
  y0 << 0.0;
  const IterateTrace tr = run_gda(b, c, x0, y0);
  const fs::path p = fs::temp_directory_path() / "minimax_io_trace.csv";
  write_trace_csv(tr, p.string(), 1, 1);
  const CsvTable t = read_csv_table(p.string());
  ASSERT_EQ(t.rows.size(), 6u);
  const int cx = t.column("x_0"), ct = t.column("t");
  ASSERT_GE(cx, 0);
  for (size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(t.rows[i][ct], static_cast<double>(i));
    EXPECT_EQ(t.rows[i][cx], tr.records[i].x[0]);
  }
}

TEST(Io, MalformedCsvIsRejected) {
  const fs::path p = fs::temp_directory_path() / "minimax_io_bad.csv";
  std::ofstream(p) << "t,x_0\n0,1\n1\n";
  EXPECT_THROW(read_csv_table(p.string()), ManifestError);
  std::ofstream(p) << "t,x_0\n0,banana\n";
  EXPECT_THROW(read_csv_table(p.string()), ManifestError);
}
