#pragma once

#include "lsw/common.hpp"

namespace lsw::linalg {

/// LU determinant with partial pivoting; the empty matrix has determinant 1.
Complex determinant(const CMatrix& a);

/// Product of row 2-norms, an upper bound on |det(a)|.
double hadamard_bound(const CMatrix& a);

/// Solves a * x = b. Throws NearSingularSystem when the reciprocal
/// condition estimate falls below 1 / max_condition.
CVector solve(const CMatrix& a, const CVector& b, double max_condition);

/// Solves (I + x * y) z = r without forming the product, through the block
/// system [I x; -y I] [z; y z] = [r; 0] after row/column equilibration.
/// Stays accurate when x and y carry exponentially graded row scales, where
/// I + x * y itself is numerically rank-deficient. The condition estimate
/// applies to the equilibrated block matrix.
CVector solve_factored(const CMatrix& x, const CMatrix& y, const CVector& r,
                       double max_condition);

/// Solves the row-vector system x^T * a = b^T.
CVector solve_row(const CMatrix& a, const CVector& b, double max_condition);

/// det(a + col * row^T) - det(a), taken from the single bordered
/// determinant -det([a col; row^T 0]) so no two large determinants are
/// subtracted.
Complex bordered_increment(const CMatrix& a, const CVector& col,
                           const CVector& row);

}  // namespace lsw::linalg
