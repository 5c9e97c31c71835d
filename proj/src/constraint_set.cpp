#include "minimax/constraint_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace minimax {

namespace {

void require_dim(const Vector& y, int dim) {
  if (y.size() != dim) {
    throw ContractViolation("projection dimension mismatch: got " + std::to_string(y.size()) +
                            ", set has " + std::to_string(dim));
  }
}

Vector project_ball(const Vector& y, const Vector& center, double radius) {
  Vector d = y - center;
  const double n = d.norm();
  if (n <= radius) return y;
  return center + d * (radius / n);
}

}  // namespace

ConstraintSet ConstraintSet::box(Vector lo, Vector hi) {
  if (lo.size() == 0 || lo.size() != hi.size()) throw InvalidParameter("box bounds must be nonempty and equal length");
  if ((lo.array() > hi.array()).any()) throw InvalidParameter("box requires lo <= hi");
  if (!lo.allFinite() || !hi.allFinite()) throw InvalidParameter("box must be bounded");
  ConstraintSet s;
  s.kind_ = Kind::Box;
  s.dim_ = static_cast<int>(lo.size());
  s.lo_ = std::move(lo);
  s.hi_ = std::move(hi);
  return s;
}

ConstraintSet ConstraintSet::box(int dim, double lo, double hi) {
  return box(Vector::Constant(dim, lo), Vector::Constant(dim, hi));
}

ConstraintSet ConstraintSet::ball(Vector center, double radius) {
  if (center.size() == 0) throw InvalidParameter("ball center must be nonempty");
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw InvalidParameter("ball radius must be finite and >= 0");
  ConstraintSet s;
  s.kind_ = Kind::Ball;
  s.dim_ = static_cast<int>(center.size());
  s.centers_ = center.transpose();
  s.radius_ = radius;
  return s;
}

ConstraintSet ConstraintSet::simplex(int dim) {
  if (dim <= 0) throw InvalidParameter("simplex dimension must be positive");
  ConstraintSet s;
  s.kind_ = Kind::Simplex;
  s.dim_ = dim;
  return s;
}

ConstraintSet ConstraintSet::product_of_balls(Matrix centers, double radius) {
  if (centers.rows() == 0 || centers.cols() == 0) throw InvalidParameter("product of balls needs at least one block");
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw InvalidParameter("ball radius must be finite and >= 0");
  ConstraintSet s;
  s.kind_ = Kind::ProductOfBalls;
  s.dim_ = static_cast<int>(centers.rows() * centers.cols());
  s.centers_ = std::move(centers);
  s.radius_ = radius;
  return s;
}

// Sort-and-threshold projection onto {y >= 0, sum y = 1}.
Vector project_simplex(const Vector& v) {
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

Vector ConstraintSet::project(const Vector& y) const {
  require_dim(y, dim_);
  switch (kind_) {
    case Kind::Box:
      return y.cwiseMax(lo_).cwiseMin(hi_);
    case Kind::Ball:
      return project_ball(y, centers_.row(0).transpose(), radius_);
    case Kind::Simplex:
      return project_simplex(y);
    case Kind::ProductOfBalls: {
      const Eigen::Index bd = centers_.cols();
      Vector out(y.size());
      for (Eigen::Index i = 0; i < centers_.rows(); ++i) {
        out.segment(i * bd, bd) = project_ball(y.segment(i * bd, bd), centers_.row(i).transpose(), radius_);
      }
      return out;
    }
  }
  return y;
}

bool ConstraintSet::contains(const Vector& y, double tol) const {
  if (y.size() != dim_ || !y.allFinite()) return false;
  switch (kind_) {
    case Kind::Box:
      return ((y - lo_).array() >= -tol).all() && ((hi_ - y).array() >= -tol).all();
    case Kind::Ball:
      return (y - centers_.row(0).transpose()).norm() <= radius_ + tol;
    case Kind::Simplex:
      return (y.array() >= -tol).all() && std::abs(y.sum() - 1.0) <= tol * std::max<double>(1.0, dim_);
    case Kind::ProductOfBalls: {
      const Eigen::Index bd = centers_.cols();
      for (Eigen::Index i = 0; i < centers_.rows(); ++i) {
        if ((y.segment(i * bd, bd) - centers_.row(i).transpose()).norm() > radius_ + tol) return false;
      }
      return true;
    }
  }
  return false;
}

double ConstraintSet::diameter() const {
  switch (kind_) {
    case Kind::Box:
      return (hi_ - lo_).norm();
    case Kind::Ball:
      return 2.0 * radius_;
    case Kind::Simplex:
      return dim_ >= 2 ? std::sqrt(2.0) : 0.0;
    case Kind::ProductOfBalls:
      return 2.0 * radius_ * std::sqrt(static_cast<double>(centers_.rows()));
  }
  return 0.0;
}

Vector ConstraintSet::center() const {
  switch (kind_) {
    case Kind::Box:
      return 0.5 * (lo_ + hi_);
    case Kind::Ball:
      return centers_.row(0).transpose();
    case Kind::Simplex:
      return Vector::Constant(dim_, 1.0 / dim_);
    case Kind::ProductOfBalls: {
      Matrix c = centers_.transpose();  // column-major: block i is column i
      return Eigen::Map<const Vector>(c.data(), c.size());
    }
  }
  return Vector::Zero(dim_);
}

Vector ConstraintSet::sample(RngState& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto in_ball = [&](Eigen::Index d, double r) {
    Vector g(d);
    for (Eigen::Index i = 0; i < d; ++i) g[i] = normal(rng);
    const double n = g.norm();
    if (n == 0.0) return Vector(Vector::Zero(d));
    return Vector(g * (r * std::pow(unif(rng), 1.0 / static_cast<double>(d)) / n));
  };
  switch (kind_) {
    case Kind::Box: {
      Vector y(dim_);
      for (int i = 0; i < dim_; ++i) y[i] = lo_[i] + (hi_[i] - lo_[i]) * unif(rng);
      return y;
    }
    case Kind::Ball:
      return centers_.row(0).transpose() + in_ball(dim_, radius_);
    case Kind::Simplex: {
      // Normalized exponentials are uniform on the simplex.
      std::exponential_distribution<double> expo(1.0);
      Vector y(dim_);
      for (int i = 0; i < dim_; ++i) y[i] = expo(rng);
      return y / y.sum();
    }
    case Kind::ProductOfBalls: {
      const Eigen::Index bd = centers_.cols();
      Vector y(dim_);
      for (Eigen::Index i = 0; i < centers_.rows(); ++i) {
        y.segment(i * bd, bd) = centers_.row(i).transpose() + in_ball(bd, radius_);
      }
      return y;
    }
  }
  return center();
}

}  // namespace minimax
