#include <gtest/gtest.h>

#include <cmath>

#include "lsw/dressing.hpp"
#include "lsw/linalg.hpp"
#include "oracles.hpp"

using namespace lsw;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

std::vector<Complex> to_std(const CVector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST(Dressing, OneSolitonEntry) {
  const Complex k(1.04, 0.6);
  const auto s = SolitonSpec::make_reduced(-1, {k});
  const DressingSet d = build_dressing(s, eval_kernels(s, 0.0, 0.0));
  // 2 sigma kbar |g|^2 / ((kbar - k)^2 (kbar + k)) with |g| = 1
  const Complex kb = std::conj(k);
  const Complex want = -2.0 * kb / ((kb - k) * (kb - k) * (kb + k));
  EXPECT_LT(std::abs(d.Mt(0, 0) - want), 1e-15);
  EXPECT_NEAR(d.Mt(0, 0).real(), 0.69444, 5e-6);
  EXPECT_NEAR(d.Mt(0, 0).imag(), -0.40064, 5e-6);
}

TEST(Dressing, EmptySpec) {
  const auto s = SolitonSpec::make_reduced(-1, {});
  const DressingSet d = build_dressing(s, eval_kernels(s, 0.3, 0.1));
  EXPECT_EQ(d.Mt.size(), 0);
  EXPECT_EQ(d.calG.size(), 0);
  EXPECT_EQ(linalg::determinant(CMatrix::Identity(0, 0) + d.Mt), Complex(1.0));
}

TEST(Dressing, AggregatesAreColumnSums) {
  oracle::SpecSampler rs(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = rs.any(4, trial % 2);
    const DressingSet d = build_dressing(s, eval_kernels(s, rs.uniform(-3, 3), rs.uniform(-3, 3)));
    for (Eigen::Index j = 0; j < 4; ++j) {
      Complex a = 0, b = 0;
      for (Eigen::Index n = 0; n < 4; ++n) {
        a += d.G(n, j);
        b += d.Gt(n, j);
      }
      EXPECT_LT(std::abs(a - d.calG[j]), 1e-13 * (1 + std::abs(a)));
      EXPECT_LT(std::abs(b - d.calGt[j]), 1e-13 * (1 + std::abs(b)));
    }
  }
}

TEST(Dressing, DeterminantMatchesLeibnizOracle) {
  oracle::SpecSampler rs(22);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto s = rs.any(n, trial % 2);
      const KernelPair kp = eval_kernels(s, rs.uniform(-2, 2), rs.uniform(-2, 2));
      const DressingSet d = build_dressing(s, kp);
      const auto m = oracle::one_plus_mt(s.poles_k, to_std(poles_l_of(s)), to_std(kp.g), to_std(kp.h));
      const auto ni = static_cast<Eigen::Index>(n);
      const CMatrix a = CMatrix::Identity(ni, ni) + d.Mt;
      const Complex lu = linalg::determinant(a);
      // Backward-stable LU: relative error grows with hadamard / |det|.
      const double growth = linalg::hadamard_bound(a) / std::abs(lu);
      const double tol = 1e-12 + 4.0 * static_cast<double>(n) * 2.2e-16 * growth;
      EXPECT_LT(rel(lu, oracle::leibniz_det(m)), tol) << "N=" << n << " growth " << growth;
    }
  }
}

// det(I + AB) = det(I + BA) and, reduced, det(I - N) = conj det(I + M).
TEST(Dressing, DeterminantIdentities) {
  oracle::SpecSampler rs(23);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const bool reduced = trial % 2 == 0;
    const auto s = rs.any(n, reduced);
    const DressingSet d = build_dressing(s, eval_kernels(s, rs.uniform(-2, 2), rs.uniform(-2, 2)));
    const CMatrix I = CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const Complex dt = linalg::determinant(I + d.Mt);
    const Complex d1 = linalg::determinant(I + d.M);
    EXPECT_LT(rel(dt, d1), 1e-12) << "N=" << n;
    if (reduced) {
      EXPECT_LT(rel(linalg::determinant(I - d.Nmat), std::conj(d1)), 1e-12);
    }
  }
}

TEST(Dressing, KernelGaugeLeavesMatricesUnchanged) {
  oracle::SpecSampler rs(24);
  const auto s = rs.any(3, false);
  const KernelPair kp = eval_kernels(s, 0.4, -0.2);
  const Complex lambda(2.5, -1.5);
  const KernelPair scaled{kp.g * lambda, kp.h / lambda};
  const DressingSet a = build_dressing(s, kp), b = build_dressing(s, scaled);
  EXPECT_LT((a.Mt - b.Mt).norm(), 1e-13 * a.Mt.norm());
  EXPECT_LT((a.M - b.M).norm(), 1e-13 * a.M.norm());
  EXPECT_LT((a.Nmat - b.Nmat).norm(), 1e-13 * a.Nmat.norm());
}

TEST(Linalg, SolveFlagsSingularSystems) {
  CMatrix a(2, 2);
  a << 1.0, 2.0, 2.0, 4.0 + 1e-15;
  try {
    linalg::solve(a, CVector::Ones(2), 1e12);
    FAIL() << "expected NearSingularSystem";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NearSingularSystem);
  }
}

TEST(Linalg, BorderedIncrementMatchesDifference) {
  oracle::SpecSampler rs(25);
  for (int n = 1; n <= 5; ++n) {
    CMatrix a = CMatrix::Random(n, n) + 3.0 * CMatrix::Identity(n, n);
    const CVector c = CVector::Random(n), r = CVector::Random(n);
    const Complex want = linalg::determinant(a + c * r.transpose()) - linalg::determinant(a);
    EXPECT_LT(std::abs(linalg::bordered_increment(a, c, r) - want), 1e-12 * (1 + std::abs(want)));
  }
}

TEST(Linalg, BorderedIncrementKeepsTinyIncrements) {
  // det(I + eps e1 e1^T) - det(I) = eps, far below the determinant's roundoff.
  const CMatrix a = CMatrix::Identity(3, 3);
  CVector c = CVector::Zero(3), r = CVector::Zero(3);
  c[0] = 1e-20;
  r[0] = 1.0;
  EXPECT_NEAR(std::abs(linalg::bordered_increment(a, c, r) - 1e-20), 0.0, 1e-35);
}
