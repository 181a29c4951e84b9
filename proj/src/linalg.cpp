#include "lsw/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lsw::linalg {

Complex determinant(const CMatrix& a) {
  if (a.rows() == 0) return Complex{1.0, 0.0};
  return a.partialPivLu().determinant();
}

double hadamard_bound(const CMatrix& a) {
  double b = 1.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) b *= a.row(i).norm();
  return b;
}

CVector solve(const CMatrix& a, const CVector& b, double max_condition) {
  if (a.rows() == 0) return CVector(0);
  const Eigen::PartialPivLU<CMatrix> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond * max_condition >= 1.0)) {
    std::ostringstream os;
    os << "condition estimate " << (rcond > 0.0 ? 1.0 / rcond : INFINITY)
       << " exceeds " << max_condition;
    throw Error(ErrorCode::NearSingularSystem, os.str());
  }
  return lu.solve(b);
}

namespace {

/// Ruiz scaling: alternately divides rows and columns by the square root of
/// their largest modulus until both are close to one.
void equilibrate(CMatrix& a, Eigen::VectorXd& row, Eigen::VectorXd& col) {
  row.setOnes(a.rows());
  col.setOnes(a.cols());
  for (int sweep = 0; sweep < 20; ++sweep) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double m = a.row(i).cwiseAbs().maxCoeff();
      if (m > 0.0) {
        const double s = 1.0 / std::sqrt(m);
        a.row(i) *= s;
        row[i] *= s;
        worst = std::max(worst, std::abs(1.0 - m));
      }
    }
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double m = a.col(j).cwiseAbs().maxCoeff();
      if (m > 0.0) {
        const double s = 1.0 / std::sqrt(m);
        a.col(j) *= s;
        col[j] *= s;
        worst = std::max(worst, std::abs(1.0 - m));
      }
    }
    if (worst < 1e-2) break;
  }
}

}  // namespace

CVector solve_factored(const CMatrix& x, const CMatrix& y, const CVector& r,
                       double max_condition) {
  const auto n = x.rows();
  if (n == 0) return CVector(0);
  CMatrix a(2 * n, 2 * n);
  a << CMatrix::Identity(n, n), x, -y, CMatrix::Identity(n, n);
  Eigen::VectorXd row, col;
  equilibrate(a, row, col);
  CVector rhs = CVector::Zero(2 * n);
  rhs.head(n) = row.head(n).cast<Complex>().cwiseProduct(r);
  const CVector z = solve(a, rhs, max_condition);
  return col.head(n).cast<Complex>().cwiseProduct(z.head(n));
}

CVector solve_row(const CMatrix& a, const CVector& b, double max_condition) {
  return solve(a.transpose(), b, max_condition);
}

Complex bordered_increment(const CMatrix& a, const CVector& col,
                           const CVector& row) {
  const auto n = a.rows();
  CMatrix b(n + 1, n + 1);
  b.topLeftCorner(n, n) = a;
  b.topRightCorner(n, 1) = col;
  b.bottomLeftCorner(1, n) = row.transpose();
  b(n, n) = 0.0;
  return -determinant(b);
}

}  // namespace lsw::linalg
