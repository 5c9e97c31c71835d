#include "minimax/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <sstream>

namespace minimax {

std::string format_number(double v) {
  if (std::isnan(v)) return {};
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  auto res = std::from_chars(first, t.data() + t.size(), out);
  return res.ec == std::errc() && res.ptr == t.data() + t.size();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(s);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

Manifest Manifest::parse(const std::string& text, const std::string& origin) {
  Manifest m;
  m.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ManifestError(fmt::format("{}:{}: expected 'section.key = value'", origin, lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto dot = key.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == key.size() || key.find('.', dot + 1) != std::string::npos ||
        key.find_first_of(" \t") != std::string::npos) {
      throw ManifestError(fmt::format("{}:{}: key '{}' must have the form section.key", origin, lineno, key));
    }
    if (m.values_.count(key)) throw ManifestError(fmt::format("{}:{}: duplicate key '{}'", origin, lineno, key));
    m.values_[key] = value;
  }
  return m;
}

Manifest Manifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot open manifest '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  Manifest m = parse(ss.str(), path);
  const auto parent = std::filesystem::path(path).parent_path();
  m.base_dir_ = parent.empty() ? "." : parent.string();
  return m;
}

std::optional<std::string> Manifest::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Manifest::get_or(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double Manifest::number(const std::string& key) const {
  auto v = get(key);
  if (!v) throw ManifestError(fmt::format("{}: missing required key '{}'", origin_, key));
  double d = 0.0;
  if (!parse_double(*v, d)) throw ManifestError(fmt::format("{}: '{}' is not a number: '{}'", origin_, key, *v));
  return d;
}

double Manifest::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long long Manifest::integer_or(const std::string& key, long long fallback) const {
  if (!has(key)) return fallback;
  const double d = number(key);
  if (d != std::floor(d) || std::abs(d) > 9.0e18) throw ManifestError(fmt::format("{}: '{}' must be an integer", origin_, key));
  return static_cast<long long>(d);
}

bool Manifest::flag_or(const std::string& key, bool fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ManifestError(fmt::format("{}: '{}' must be true or false", origin_, key));
}

std::vector<double> Manifest::numbers(const std::string& key) const {
  auto v = get(key);
  if (!v) return {};
  std::vector<double> out;
  for (const std::string& cell : split(*v, ',')) {
    double d = 0.0;
    if (!parse_double(cell, d)) throw ManifestError(fmt::format("{}: '{}' has a non-numeric entry '{}'", origin_, key, cell));
    out.push_back(d);
  }
  return out;
}

std::vector<long long> Manifest::integers(const std::string& key) const {
  std::vector<long long> out;
  for (double d : numbers(key)) {
    if (d != std::floor(d)) throw ManifestError(fmt::format("{}: '{}' must list integers", origin_, key));
    out.push_back(static_cast<long long>(d));
  }
  return out;
}

std::string TraceCsvWriter::header(int dim_x, int dim_y) {
  std::string h = "t";
  if (dim_x <= 8) {
    for (int i = 0; i < dim_x; ++i) h += ",x_" + std::to_string(i);
  } else {
    h += ",x_norm";
  }
  if (dim_y <= 8) {
    for (int i = 0; i < dim_y; ++i) h += ",y_" + std::to_string(i);
  } else {
    h += ",y_norm";
  }
  return h + ",f,grad_x_norm,grad_y_norm,phi,grad_phi_norm,moreau_grad_norm,delta,gap,wall_ms";
}

TraceCsvWriter::TraceCsvWriter(const std::string& path, int dim_x, int dim_y)
    : out_(path, std::ios::binary), dim_x_(dim_x), dim_y_(dim_y) {
  if (!out_) throw Error("cannot write trace '" + path + "'");
  out_ << header(dim_x, dim_y) << '\n';
}

void TraceCsvWriter::write(const IterateRecord& r) {
  std::string line = std::to_string(r.t);
  auto put = [&](double v) {
    line += ',';
    line += format_number(v);
  };
  if (dim_x_ <= 8) {
    for (Eigen::Index i = 0; i < r.x.size(); ++i) put(r.x[i]);
  } else {
    put(r.x.norm());
  }
  if (dim_y_ <= 8) {
    for (Eigen::Index i = 0; i < r.y.size(); ++i) put(r.y[i]);
  } else {
    put(r.y.norm());
  }
  put(r.f_val);
  put(r.grad_x_norm);
  put(r.grad_y_norm);
  put(r.diag.phi);
  put(r.diag.grad_phi_norm);
  put(r.diag.moreau_grad_norm);
  put(r.diag.delta);
  put(r.diag.gap);
  put(r.wall_ms);
  line += '\n';
  out_ << line;
}

void write_trace_csv(const IterateTrace& trace, const std::string& path, int dim_x, int dim_y) {
  TraceCsvWriter w(path, dim_x, dim_y);
  for (const auto& r : trace.records) w.write(r);
}

int CsvTable::column(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

CsvTable read_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ManifestError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split(line, ',');
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != table.header.size()) {
      throw ManifestError(fmt::format("{}:{}: expected {} fields, found {}", path, lineno, table.header.size(), cells.size()));
    }
    std::vector<double> row(cells.size(), std::numeric_limits<double>::quiet_NaN());
    for (size_t j = 0; j < cells.size(); ++j) {
      if (trim(cells[j]).empty()) continue;
      double d = 0.0;
      if (!parse_double(cells[j], d)) {
        const bool text_ok = table.header[j] == "problem" || table.header[j] == "algorithm";
        if (!text_ok) throw ManifestError(fmt::format("{}:{}: field '{}' is not a number", path, lineno, table.header[j]));
        continue;
      }
      row[j] = d;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace minimax
