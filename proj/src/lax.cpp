#include "lsw/lax.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "lsw/dressing.hpp"
#include "lsw/linalg.hpp"

namespace lsw {

PsiRow::PsiRow(std::size_t row, CVector k, CVector l, CVector g, CVector h,
               CVector at_l, CVector at_minus_l, double min_distance)
    : row_(row), k_(std::move(k)), l_(std::move(l)), g_(std::move(g)),
      h_(std::move(h)), at_l_(std::move(at_l)),
      at_minus_l_(std::move(at_minus_l)), min_distance_(min_distance) {}

void PsiRow::require_off(Complex k, const CVector& poles, double sign) const {
  for (Eigen::Index j = 0; j < poles.size(); ++j) {
    if (std::abs(k - sign * poles[j]) < min_distance_) {
      std::ostringstream os;
      os << "psi evaluated at k=" << k << " on the support point "
         << sign * poles[j];
      throw Error(ErrorCode::EvalOnSupport, os.str());
    }
  }
}

Complex PsiRow::psi1(Complex k) const {
  require_off(k, l_, 1.0);
  Complex s = (row_ == 0) ? 1.0 : 0.0;
  for (Eigen::Index m = 0; m < l_.size(); ++m) s -= h_[m] * at_l_[m] / (l_[m] - k);
  return s;
}

Complex PsiRow::psi3(Complex k) const {
  require_off(k, l_, -1.0);
  Complex s = (row_ == 2) ? 1.0 : 0.0;
  for (Eigen::Index m = 0; m < l_.size(); ++m) {
    s -= h_[m] * at_minus_l_[m] / (l_[m] + k);
  }
  return s;
}

Complex PsiRow::psi2(Complex k) const {
  require_off(k, k_, 1.0);
  require_off(k, k_, -1.0);
  Complex s = (row_ == 1) ? 1.0 : 0.0;
  for (Eigen::Index n = 0; n < k_.size(); ++n) {
    s -= g_[n] * psi1(k_[n]) / (k_[n] - k) + g_[n] * psi3(-k_[n]) / (k_[n] + k);
  }
  return s;
}

std::array<Complex, 3> PsiRow::at(Complex k) const {
  return {psi1(k), psi2(k), psi3(k)};
}

PsiRow reconstruct_psi_row(const SolitonSpec& spec, double x, double t,
                           std::size_t row, const Tolerances& tol) {
  if (row > 2) throw Error(ErrorCode::ConfigError, "psi row index must be 0, 1 or 2");
  const KernelPair kp = eval_kernels(spec, x, t, tol);
  const CVector k = poles_k_of(spec);
  const CVector l = poles_l_of(spec);
  const auto n = k.size();
  if (n == 0) {
    return PsiRow(row, k, l, kp.g, kp.h, CVector(0), CVector(0),
                  tol.min_denominator);
  }
  const DressingSet d = build_dressing(spec, kp, tol);
  const CVector E = CVector::Ones(n);

  // Row vectors a = psi_{i2}(l), b = psi_{i2}(-l) satisfy
  //   a = ra + a HG + b HGt,   b = rb + a HGt + b HG,
  // with ra, rb fixed by the inhomogeneity of row i.
  CVector ra = CVector::Zero(n);
  CVector rb = CVector::Zero(n);
  switch (row) {
    case 0: ra = -d.calG; rb = -d.calGt; break;
    case 1: ra = E; rb = E; break;
    case 2: ra = -d.calGt; rb = -d.calG; break;
  }
  const CMatrix HG = d.H * d.G;
  const CMatrix HGt = d.H * d.Gt;
  CMatrix A(2 * n, 2 * n);
  A << CMatrix::Identity(n, n) - HG, -HGt, -HGt, CMatrix::Identity(n, n) - HG;
  CVector rhs(2 * n);
  rhs << ra, rb;
  const CVector ab = linalg::solve_row(A, rhs, tol.max_condition);
  return PsiRow(row, k, l, kp.g, kp.h, ab.head(n), ab.tail(n),
                tol.min_denominator);
}

Eigenfunction reconstruct_psi(const SolitonSpec& spec, double x, double t,
                              const Tolerances& tol) {
  const KernelPair kp = eval_kernels(spec, x, t, tol);
  return Eigenfunction{{reconstruct_psi_row(spec, x, t, 0, tol),
                        reconstruct_psi_row(spec, x, t, 1, tol),
                        reconstruct_psi_row(spec, x, t, 2, tol)},
                       poles_k_of(spec), poles_l_of(spec), kp.g, kp.h};
}

Matrix3c Eigenfunction::at(Complex kk) const {
  Matrix3c m;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto r = rows[i].at(kk);
    for (std::size_t j = 0; j < 3; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r[j];
    }
  }
  return m;
}

Matrix3c Eigenfunction::moment() const {
  // Each delta term contributes -(weight) * psi(support point) to its column.
  Matrix3c pr = Matrix3c::Zero();
  for (std::size_t i = 0; i < 3; ++i) {
    const PsiRow& r = rows[i];
    const auto ii = static_cast<Eigen::Index>(i);
    for (Eigen::Index j = 0; j < k.size(); ++j) {
      pr(ii, 0) -= h[j] * r.at_l()[j];
      pr(ii, 1) -= g[j] * (r.psi1(k[j]) - r.psi3(-k[j]));
      pr(ii, 2) += h[j] * r.at_minus_l()[j];
    }
  }
  return pr;
}

Matrix3c q_from_psi(const Eigenfunction& psi) {
  const Matrix3c pr = psi.moment();
  const double J[3] = {1.0, 0.0, -1.0};
  Matrix3c q;
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) q(i, j) = kI * (J[i] - J[j]) * pr(i, j);
  }
  return q;
}

Matrix3c q_from_psi(const SolitonSpec& spec, double x, double t,
                    const Tolerances& tol) {
  return q_from_psi(reconstruct_psi(spec, x, t, tol));
}

double lax_x_residual(const SolitonSpec& spec, double x, double t, Complex k,
                      double step, const Tolerances& tol) {
  if (!(step > 0.0)) throw Error(ErrorCode::ConfigError, "finite-difference step must be positive");
  const Eigenfunction centre = reconstruct_psi(spec, x, t, tol);
  const Matrix3c psi = centre.at(k);
  const Matrix3c plus = reconstruct_psi(spec, x + step, t, tol).at(k);
  const Matrix3c minus = reconstruct_psi(spec, x - step, t, tol).at(k);
  const Matrix3c q = q_from_psi(centre);
  const Eigen::Vector3cd J(1.0, 0.0, -1.0);
  const Matrix3c jpsi = J.asDiagonal() * psi;
  const Matrix3c psij = psi * J.asDiagonal();
  const Matrix3c r = (plus - minus) / (2.0 * step) - kI * k * (jpsi - psij) - q * psi;
  return r.norm();
}

double reflection_defect(const Eigenfunction& psi, Complex k) {
  Matrix3c a = Matrix3c::Zero();
  a(0, 2) = a(1, 1) = a(2, 0) = 1.0;
  return (a * psi.at(k) * a - psi.at(-k)).norm();
}

double conjugation_defect(const Eigenfunction& psi, Complex k, int sigma) {
  const Eigen::Vector3cd b(1.0, -static_cast<double>(sigma), 1.0);
  const Matrix3c lhs = psi.at(std::conj(k)).adjoint();
  const Matrix3c rhs = b.asDiagonal() * psi.at(k).inverse() * b.asDiagonal();
  return (lhs - rhs).norm();
}

double normalization_defect(const Eigenfunction& psi, Complex k) {
  return (psi.at(k) - Matrix3c::Identity()).norm();
}

}  // namespace lsw
