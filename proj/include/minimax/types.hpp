#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace minimax {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Explicit generator state. Every stochastic operation takes it by reference,
// so a run is reproducible from its seed alone.
using RngState = std::mt19937_64;

inline RngState make_rng(std::uint64_t seed) { return RngState(seed); }

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error {
  using Error::Error;
};
struct InvalidRegime : Error {
  using Error::Error;
};
struct ContractViolation : Error {
  using Error::Error;
};
struct NondifferentiableRegime : Error {
  using Error::Error;
};
struct CannotAudit : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  BudgetExceeded(const std::string& what, Vector best_x, Vector best_y, double best_value)
      : Error(what), x(std::move(best_x)), y(std::move(best_y)), value(best_value) {}
  Vector x;
  Vector y;
  double value;
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace minimax
