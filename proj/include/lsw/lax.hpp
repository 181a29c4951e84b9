#pragma once

#include <array>
#include <cstddef>

#include "lsw/common.hpp"
#include "lsw/model.hpp"

namespace lsw {

using Matrix3c = Eigen::Matrix3cd;

/// One row of the dressed eigenfunction psi(k) at fixed (x,t).
///
/// The row is determined by the 2N interior values psi_{i2}(l_m) and
/// psi_{i2}(-l_m); the remaining entries follow from the delta-supported
/// Cauchy-Green closures. Row indices are 0-based.
class PsiRow {
 public:
  PsiRow(std::size_t row, CVector k, CVector l, CVector g, CVector h,
         CVector at_l, CVector at_minus_l, double min_distance);

  std::size_t row() const noexcept { return row_; }

  /// psi_{i2}(l_m) and psi_{i2}(-l_m).
  const CVector& at_l() const noexcept { return at_l_; }
  const CVector& at_minus_l() const noexcept { return at_minus_l_; }

  /// Column closures; each throws EvalOnSupport only at its own poles.
  Complex psi1(Complex k) const;
  Complex psi2(Complex k) const;
  Complex psi3(Complex k) const;

  /// (psi_{i1}, psi_{i2}, psi_{i3})(k), k off the whole spectral support.
  std::array<Complex, 3> at(Complex k) const;

 private:
  void require_off(Complex k, const CVector& poles, double sign) const;

  std::size_t row_;
  CVector k_, l_, g_, h_;
  CVector at_l_, at_minus_l_;
  double min_distance_;
};

PsiRow reconstruct_psi_row(const SolitonSpec& spec, double x, double t,
                           std::size_t row, const Tolerances& tol = {});

/// All three rows at one (x,t).
struct Eigenfunction {
  std::array<PsiRow, 3> rows;
  CVector k, l, g, h;

  Matrix3c at(Complex k) const;
  /// <psi R>, the moment of psi against the delta-supported spectral data.
  Matrix3c moment() const;
};

Eigenfunction reconstruct_psi(const SolitonSpec& spec, double x, double t,
                              const Tolerances& tol = {});

/// Q = i [J, <psi R>], J = diag(1, 0, -1).
Matrix3c q_from_psi(const Eigenfunction& psi);
Matrix3c q_from_psi(const SolitonSpec& spec, double x, double t,
                    const Tolerances& tol = {});

/// Frobenius norm of the centered x-residual of psi_x - ik[J,psi] - Q psi.
double lax_x_residual(const SolitonSpec& spec, double x, double t, Complex k,
                      double step, const Tolerances& tol = {});

inline double default_fd_step(double x) { return 1e-4 * (1.0 + std::abs(x)); }

/// ||A psi(k) A - psi(-k)||_F with A the anti-diagonal permutation.
double reflection_defect(const Eigenfunction& psi, Complex k);

/// ||psi(conj k)^dagger - B psi(k)^{-1} B||_F with B = diag(1, -sigma, 1).
double conjugation_defect(const Eigenfunction& psi, Complex k, int sigma);

/// ||psi(k) - I||_F.
double normalization_defect(const Eigenfunction& psi, Complex k);

}  // namespace lsw
