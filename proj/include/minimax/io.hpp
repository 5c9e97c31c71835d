#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minimax/solvers.hpp"

namespace minimax {

// Shortest decimal that round-trips; empty for NaN.
std::string format_number(double v);

// Flat `section.key = value` manifest. '#' starts a comment.
class Manifest {
 public:
  static Manifest parse(const std::string& text, const std::string& origin = "<string>");
  static Manifest load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  long long integer_or(const std::string& key, long long fallback) const;
  bool flag_or(const std::string& key, bool fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<long long> integers(const std::string& key) const;
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  const std::map<std::string, std::string>& values() const { return values_; }
  // Directory of the manifest file, for resolving relative paths.
  const std::string& base_dir() const { return base_dir_; }

 private:
  std::map<std::string, std::string> values_;
  std::string base_dir_ = ".";
  std::string origin_;
};

struct ManifestError : Error {
  using Error::Error;
};

// Trace CSV with the fixed column schema.
class TraceCsvWriter {
 public:
  TraceCsvWriter(const std::string& path, int dim_x, int dim_y);
  void write(const IterateRecord& r);
  void flush() { out_.flush(); }
  static std::string header(int dim_x, int dim_y);

 private:
  std::ofstream out_;
  int dim_x_, dim_y_;
};

void write_trace_csv(const IterateTrace& trace, const std::string& path, int dim_x, int dim_y);

// Parsed trace: column names and numeric rows (NaN for empty cells).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  int column(const std::string& name) const;
};

// Throws ManifestError naming the first malformed line.
CsvTable read_csv_table(const std::string& path);

}  // namespace minimax
