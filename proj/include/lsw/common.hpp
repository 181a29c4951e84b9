#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lsw {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

enum class ErrorCode {
  DuplicatePole,
  SingularDenominator,
  BadSigma,
  ShapeMismatch,
  BadReducedPole,
  ExponentOverflow,
  NearSingularSystem,
  NotOneSoliton,
  NotTwoSoliton,
  TooManySolitons,
  EvalOnSupport,
  GridTooCoarse,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Numerical thresholds shared by every evaluation route.
struct Tolerances {
  /// Floor on |k_n - l_m|, |k_n + l_m| and on pole separations.
  double min_denominator = 1e-8;
  /// Largest |exponent| accepted before forming a kernel exponential.
  double exponent_cap = 700.0;
  /// Largest accepted condition estimate of a linear solve.
  double max_condition = 1e12;
  /// |det| below this fraction of its Hadamard bound counts as singular.
  double singular_det = 1e-12;
};

}  // namespace lsw
