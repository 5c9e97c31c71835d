#include "minimax/problems.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace minimax {

double spectral_norm_power(const Matrix& H, double tol, int max_iters) {
  if (H.rows() != H.cols() || H.rows() == 0) throw ContractViolation("spectral norm needs a nonempty square matrix");
  // Deterministic start with no special alignment to coordinate axes.
  Vector v(H.rows());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.1 * std::sin(1.0 + 3.7 * static_cast<double>(i));
  v.normalize();
  double lambda = 0.0;
  for (int k = 0; k < max_iters; ++k) {
    Vector w = H * (H * v);
    const double n = w.norm();
    if (n == 0.0) return 0.0;
    const double next = std::sqrt(v.dot(w));
    v = w / n;
    if (std::abs(next - lambda) <= tol * std::max(1.0, next)) return std::sqrt((H * v).squaredNorm());
    lambda = next;
  }
  return std::sqrt((H * v).squaredNorm());
}

MinimaxProblem make_quadratic_nsc(const Matrix& A, const Matrix& B, double mu, double radius) {
  const Eigen::Index m = A.rows();
  if (A.cols() != m || m == 0) throw ContractViolation("A must be square and nonempty");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff())) {
    throw ContractViolation("A must be symmetric");
  }
  if (B.rows() != m || B.cols() == 0) throw ContractViolation("B must have as many rows as A");
  if (!(mu > 0.0)) throw InvalidParameter("mu must be > 0");
  if (!(radius > 0.0)) throw InvalidParameter("radius must be > 0");
  const Eigen::Index n = B.cols();

  auto data = std::make_shared<const std::pair<Matrix, Matrix>>(A, B);
  MinimaxProblem p;
  p.name = "quadratic";
  p.dim_x = static_cast<int>(m);
  p.dim_y = static_cast<int>(n);
  p.value = [data, mu](const Vector& x, const Vector& y) {
    const auto& [Am, Bm] = *data;
    return 0.5 * x.dot(Am * x) + x.dot(Bm * y) - 0.5 * mu * y.squaredNorm();
  };
  p.grad_x = [data](const Vector& x, const Vector& y) -> Vector { return data->first * x + data->second * y; };
  p.grad_y = [data, mu](const Vector& x, const Vector& y) -> Vector {
    return data->second.transpose() * x - mu * y;
  };

  Matrix H(m + n, m + n);
  H << A, B, B.transpose(), -mu * Matrix::Identity(n, n);
  p.constants.ell = spectral_norm_power(H);
  p.constants.mu = mu;
  p.constants.lip_L = 0.0;  // grad_x grows with x; no global L
  p.constants.diameter_D = 2.0 * radius;
  p.constraint = ConstraintSet::ball(Vector::Zero(n), radius);

  ClosedFormOracles gt;
  gt.y_star = [data, mu, radius](const Vector& x) -> Vector {
    Vector v = data->second.transpose() * x / mu;
    const double nv = v.norm();
    return nv <= radius ? v : Vector(v * (radius / nv));
  };
  gt.phi = [data, mu, radius](const Vector& x) {
    const auto& [Am, Bm] = *data;
    const Vector btx = Bm.transpose() * x;
    const double nb = btx.norm();
    if (nb <= mu * radius) return 0.5 * x.dot(Am * x) + btx.squaredNorm() / (2.0 * mu);
    return 0.5 * x.dot(Am * x) + radius * nb - 0.5 * mu * radius * radius;
  };
  gt.grad_phi = [data, mu, radius](const Vector& x) -> Vector {
    const auto& [Am, Bm] = *data;
    const Vector btx = Bm.transpose() * x;
    const double nb = btx.norm();
    if (nb <= mu * radius) return (Am + Bm * Bm.transpose() / mu) * x;
    return Am * x + Bm * (btx * (radius / nb));
  };
  // With a negative eigenvalue in A, Phi is unbounded below and has no minimum.
  // For PSD A, Phi >= 0 = Phi(0).
  if (Eigen::SelfAdjointEigenSolver<Matrix>(A, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() >= 0.0) {
    gt.phi_min = 0.0;
  }
  p.ground_truth = std::move(gt);
  return p;
}

MinimaxProblem make_default_quadratic() {
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = -3.0;
  return make_quadratic_nsc(A, Matrix::Identity(2, 2), 1.0, 10.0);
}

MinimaxProblem make_bilinear_box(double scale, int dim) {
  if (!(scale > 0.0)) throw InvalidParameter("scale must be > 0");
  if (dim <= 0) throw InvalidParameter("dim must be positive");
  MinimaxProblem p;
  p.name = "bilinear";
  p.dim_x = dim;
  p.dim_y = dim;
  p.value = [scale](const Vector& x, const Vector& y) { return scale * x.dot(y); };
  p.grad_x = [scale](const Vector&, const Vector& y) -> Vector { return scale * y; };
  p.grad_y = [scale](const Vector& x, const Vector&) -> Vector { return scale * x; };
  p.constants.ell = scale;
  p.constants.lip_L = scale * std::sqrt(static_cast<double>(dim));
  p.constants.mu = 0.0;
  p.constants.diameter_D = 2.0 * std::sqrt(static_cast<double>(dim));
  p.constraint = ConstraintSet::box(dim, -1.0, 1.0);

  ClosedFormOracles gt;
  gt.phi = [scale](const Vector& x) { return scale * x.cwiseAbs().sum(); };
  gt.y_star = [](const Vector& x) -> Vector { return x.unaryExpr([](double v) { return double((v > 0) - (v < 0)); }); };
  // prox of scale*|.| + scale*(w - x)^2 is soft-thresholding at 1/2.
  gt.moreau_grad = [scale](const Vector& x) -> Vector { return (2.0 * scale * x).cwiseMax(-scale).cwiseMin(scale); };
  gt.moreau_value = [scale](const Vector& x) {
    double v = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double w = std::copysign(std::max(std::abs(x[i]) - 0.5, 0.0), x[i]);
      v += scale * std::abs(w) + scale * (w - x[i]) * (w - x[i]);
    }
    return v;
  };
  gt.phi_min = 0.0;
  p.ground_truth = std::move(gt);
  return p;
}

namespace {

struct RegressionModel {
  Matrix xi;  // N x d
  Vector t;
  double gamma;
  double inv_n;
};

// Curvature factor of 1/2 (tanh z - t)^2 along w: d^2/dz^2 = s (s - 2 r tanh z).
double loss_curvature(double z, double t) {
  const double th = std::tanh(z);
  const double s = 1.0 - th * th;
  return s * (s - 2.0 * (th - t) * th);
}

// Finite-difference Hessian of a gradient map, symmetrized.
Matrix fd_hessian(const std::function<Vector(const Vector&)>& grad, const Vector& z, double h) {
  const Eigen::Index n = z.size();
  Matrix H(n, n);
  Vector zp = z;
  for (Eigen::Index i = 0; i < n; ++i) {
    zp[i] = z[i] + h;
    const Vector gp = grad(zp);
    zp[i] = z[i] - h;
    const Vector gm = grad(zp);
    zp[i] = z[i];
    H.col(i) = (gp - gm) / (2.0 * h);
  }
  return 0.5 * (H + H.transpose());
}

}  // namespace

MinimaxProblem make_robust_regression(const Matrix& features, const Vector& targets, double gamma,
                                      double perturb_radius, const RobustRegressionOptions& options) {
  const Eigen::Index N = features.rows();
  const Eigen::Index d = features.cols();
  if (N == 0 || d == 0) throw InvalidParameter("dataset must be nonempty");
  if (targets.size() != N) throw InvalidParameter("targets must have one entry per sample");
  if (!(gamma > 0.0)) throw InvalidParameter("gamma must be > 0");
  if (!(perturb_radius >= 0.0)) throw InvalidParameter("perturb_radius must be >= 0");

  // Concavity certificate: for |w| <= Rw the per-sample y-Hessian is
  // c(z) w w' - 2 gamma I, with c scanned over a fine grid of z = w'y.
  const double Rw = options.weight_radius;
  Vector cmax(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    double c = 0.0;
    for (int k = 0; k <= 8000; ++k) c = std::max(c, loss_curvature(-20.0 + 40.0 * k / 8000.0, targets[i]));
    cmax[i] = c;
    const double top = c * Rw * Rw - 2.0 * gamma;
    if (top > -options.concavity_margin) {
      throw InvalidParameter(fmt::format(
          "gamma={} too small: inner objective of sample {} is not strongly concave (top y-curvature {:.4g} > {:.4g})",
          gamma, i, top, -options.concavity_margin));
    }
  }

  auto model = std::make_shared<const RegressionModel>(RegressionModel{features, targets, gamma, 1.0 / double(N)});
  MinimaxProblem p;
  p.name = "robust_regression";
  p.dim_x = static_cast<int>(d);
  p.dim_y = static_cast<int>(N * d);
  p.value = [model, d](const Vector& w, const Vector& y) {
    const RegressionModel& m = *model;
    double v = 0.0;
    for (Eigen::Index i = 0; i < m.xi.rows(); ++i) {
      const auto yi = y.segment(i * d, d);
      const double r = std::tanh(w.dot(yi)) - m.t[i];
      v += 0.5 * r * r - m.gamma * (yi - m.xi.row(i).transpose()).squaredNorm();
    }
    return v * m.inv_n;
  };
  p.grad_x = [model, d](const Vector& w, const Vector& y) -> Vector {
    const RegressionModel& m = *model;
    Vector g = Vector::Zero(d);
    for (Eigen::Index i = 0; i < m.xi.rows(); ++i) {
      const auto yi = y.segment(i * d, d);
      const double th = std::tanh(w.dot(yi));
      g += (th - m.t[i]) * (1.0 - th * th) * yi;
    }
    return g * m.inv_n;
  };
  p.grad_y = [model, d](const Vector& w, const Vector& y) -> Vector {
    const RegressionModel& m = *model;
    Vector g(y.size());
    for (Eigen::Index i = 0; i < m.xi.rows(); ++i) {
      const auto yi = y.segment(i * d, d);
      const double th = std::tanh(w.dot(yi));
      g.segment(i * d, d) = ((th - m.t[i]) * (1.0 - th * th)) * w - 2.0 * m.gamma * (yi - m.xi.row(i).transpose());
    }
    return g * m.inv_n;
  };
  p.constraint = ConstraintSet::product_of_balls(features, perturb_radius);

  ProblemConstants c;
  c.mu = (2.0 * gamma - (cmax.array() * Rw * Rw).maxCoeff()) / static_cast<double>(N);
  c.diameter_D = p.constraint.diameter();
  double L = 0.0;
  for (Eigen::Index i = 0; i < N; ++i) L += (1.0 + std::abs(targets[i])) * (features.row(i).norm() + perturb_radius);
  c.lip_L = L / static_cast<double>(N);

  // Joint smoothness: largest finite-difference Hessian norm over probe points
  // in the working region.
  RngState rng = make_rng(options.probe_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double ell = c.mu;
  for (int k = 0; k < options.probe_points; ++k) {
    Vector w(d);
    for (Eigen::Index j = 0; j < d; ++j) w[j] = normal(rng);
    w *= Rw * std::pow(unif(rng), 1.0 / double(d)) / std::max(w.norm(), 1e-300);
    const Vector y = p.constraint.sample(rng);
    Vector z(d + y.size());
    z << w, y;
    auto joint = [&p, d](const Vector& zz) -> Vector {
      Vector g(zz.size());
      const Vector ww = zz.head(d);
      const Vector yy = zz.tail(zz.size() - d);
      g << p.grad_x(ww, yy), p.grad_y(ww, yy);
      return g;
    };
    ell = std::max(ell, spectral_norm_power(fd_hessian(joint, z, 1e-5), 1e-10, 2000));
  }
  c.ell = ell;
  p.constants = c;
  return p;
}

RegressionData synthetic_regression_data(int n, int d, std::uint64_t seed) {
  if (n <= 0 || d <= 0) throw InvalidParameter("dataset shape must be positive");
  RngState rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector w_star(d);
  for (int j = 0; j < d; ++j) w_star[j] = normal(rng);
  w_star *= 1.5 / w_star.norm();
  RegressionData data{Matrix(n, d), Vector(n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) data.features(i, j) = normal(rng);
    data.targets[i] = std::tanh(data.features.row(i).dot(w_star)) + 0.1 * normal(rng);
  }
  return data;
}

RegressionData default_regression_data() { return synthetic_regression_data(32, 4, kRegressionSeed); }

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

RegressionData load_regression_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open dataset '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw InvalidParameter("dataset '" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  if (header.size() < 2 || header.back() != "target") throw InvalidParameter("dataset header must end with 'target'");
  const int d = static_cast<int>(header.size()) - 1;
  for (int j = 0; j < d; ++j) {
    if (header[j] != "feature_" + std::to_string(j)) {
      throw InvalidParameter("dataset header column " + std::to_string(j) + " must be feature_" + std::to_string(j));
    }
  }
  std::vector<std::vector<double>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (static_cast<int>(cells.size()) != d + 1) {
      throw InvalidParameter(fmt::format("dataset line {} has {} fields, expected {}", lineno, cells.size(), d + 1));
    }
    std::vector<double> row(d + 1);
    for (int j = 0; j <= d; ++j) {
      const std::string& s = cells[j];
      auto res = std::from_chars(s.data(), s.data() + s.size(), row[j]);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw InvalidParameter(fmt::format("dataset line {} field {} is not a number", lineno, j));
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidParameter("dataset '" + path + "' has no samples");
  RegressionData data{Matrix(rows.size(), d), Vector(rows.size())};
  for (size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < d; ++j) data.features(i, j) = rows[i][j];
    data.targets[i] = rows[i][d];
  }
  return data;
}

void save_regression_csv(const RegressionData& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot write dataset '" + path + "'");
  const Eigen::Index d = data.features.cols();
  for (Eigen::Index j = 0; j < d; ++j) out << "feature_" << j << ',';
  out << "target\n";
  for (Eigen::Index i = 0; i < data.features.rows(); ++i) {
    for (Eigen::Index j = 0; j < d; ++j) out << shortest(data.features(i, j)) << ',';
    out << shortest(data.targets[i]) << '\n';
  }
}

StochasticOracle add_gaussian_noise(const MinimaxProblem& problem, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidParameter("sigma must be finite and >= 0");
  StochasticOracle o{problem, sigma};
  o.base.constants.sigma = sigma;
  return o;
}

}  // namespace minimax
