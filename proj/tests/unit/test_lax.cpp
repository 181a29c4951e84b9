#include <gtest/gtest.h>

#include <cmath>

#include "lsw/lax.hpp"
#include "lsw/solvers.hpp"
#include "oracles.hpp"

using namespace lsw;

namespace {

const auto kFig1 = SolitonSpec::make_reduced(-1, {{1.04, 0.6}});

double pole_scale(const SolitonSpec& s) {
  double m = 0.0;
  for (const auto& k : s.poles_k) m = std::max(m, std::abs(k));
  for (const auto& l : s.poles_l) m = std::max(m, std::abs(l));
  return m;
}

/// A k at least 0.2 away from every support point.
Complex off_support(oracle::SpecSampler& rs, const SolitonSpec& s) {
  for (;;) {
    const Complex k(rs.uniform(-3, 3), rs.uniform(-3, 3));
    bool ok = true;
    for (std::size_t j = 0; j < s.size(); ++j) {
      for (double sgn : {1.0, -1.0}) {
        ok = ok && std::abs(k - sgn * s.poles_k[j]) > 0.2 && std::abs(k - sgn * s.poles_l[j]) > 0.2;
      }
    }
    if (ok) return k;
  }
}

}  // namespace

TEST(Lax, VacuumEigenfunctionIsIdentity) {
  const auto s = SolitonSpec::make_reduced(1, {});
  const Eigenfunction psi = reconstruct_psi(s, 0.3, 0.2);
  EXPECT_EQ(normalization_defect(psi, {0.7, -1.1}), 0.0);
  EXPECT_EQ(q_from_psi(psi).norm(), 0.0);
  EXPECT_EQ(lax_x_residual(s, 0.3, 0.2, {3, 3}, 1e-2), 0.0);
}

TEST(Lax, MiddleRowBlocksCoincide) {
  oracle::SpecSampler rs(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = rs.any(1 + trial % 3, trial % 2 == 0);
    const PsiRow r = reconstruct_psi_row(s, rs.uniform(-3, 3), rs.uniform(-2, 2), 1);
    EXPECT_LT((r.at_l() - r.at_minus_l()).norm(), 1e-12 * (1 + r.at_l().norm()));
  }
}

TEST(Lax, PotentialMatchesSolvers) {
  oracle::SpecSampler rs(42);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = rs.any(1 + trial % 4, trial % 2 == 0);
    const double x = rs.uniform(-4, 4), t = rs.uniform(-2, 2);
    const Matrix3c q = q_from_psi(s, x, t);
    const FieldSample f = fields_linear(s, x, t);
    EXPECT_LT(rel_diff(q(0, 1), f.u), 1e-9);
    EXPECT_LT(rel_diff(q(2, 1), f.u), 1e-9);
    EXPECT_LT(rel_diff(q(1, 0), f.w), 1e-9);
    EXPECT_LT(rel_diff(q(1, 2), f.w), 1e-9);
    EXPECT_LT(rel_diff(q(0, 2), kI * f.v), 1e-9);
    EXPECT_LT(rel_diff(q(2, 0), kI * f.v), 1e-9);
    for (Eigen::Index i = 0; i < 3; ++i) EXPECT_EQ(q(i, i), Complex(0.0));
  }
}

TEST(Lax, PotentialSymmetries) {
  Matrix3c a = Matrix3c::Zero();
  a(0, 2) = a(1, 1) = a(2, 0) = 1.0;
  oracle::SpecSampler rs(43);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = rs.any(1 + trial % 3, true);
    const Matrix3c q = q_from_psi(s, rs.uniform(-3, 3), rs.uniform(-2, 2));
    EXPECT_LT((a * q * a - q).norm(), 1e-10);
    const Eigen::Vector3cd b(1.0, -static_cast<double>(s.sigma), 1.0);
    EXPECT_LT((q.adjoint() + b.asDiagonal() * q * b.asDiagonal()).norm(), 1e-10);
  }
}

TEST(Lax, EigenfunctionSymmetries) {
  oracle::SpecSampler rs(44);
  for (int trial = 0; trial < 30; ++trial) {
    const bool reduced = trial % 2 == 0;
    const auto s = rs.any(1 + trial % 3, reduced);
    const Eigenfunction psi = reconstruct_psi(s, rs.uniform(-3, 3), rs.uniform(-2, 2));
    for (int i = 0; i < 10; ++i) {
      const Complex k = off_support(rs, s);
      EXPECT_LT(reflection_defect(psi, k), 1e-9);
      if (reduced) {
        EXPECT_LT(conjugation_defect(psi, k, s.sigma), 1e-8);
      }
    }
  }
}

TEST(Lax, NormalizationDecaysLikeInverseK) {
  oracle::SpecSampler rs(45);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = rs.any(2, trial % 2 == 0);
    const Eigenfunction psi = reconstruct_psi(s, rs.uniform(-2, 2), rs.uniform(-1, 1));
    const Complex dir = std::polar(1.0, rs.uniform(0.1, 1.4));
    double prev = 0.0;
    for (double f : {1e3, 1e4, 1e5}) {
      const double d = normalization_defect(psi, f * pole_scale(s) * dir);
      if (prev > 0.0) {
        EXPECT_NEAR(prev / d, 10.0, 0.1);
      }
      prev = d;
    }
  }
}

TEST(Lax, XResidualIsSecondOrder) {
  const double r1 = lax_x_residual(kFig1, 0.0, 0.0, {3, 3}, 1e-2);
  const double r2 = lax_x_residual(kFig1, 0.0, 0.0, {3, 3}, 5e-3);
  const double r3 = lax_x_residual(kFig1, 0.0, 0.0, {3, 3}, 2.5e-3);
  EXPECT_NEAR(r1 / r2, 4.0, 0.2);
  EXPECT_NEAR(r2 / r3, 4.0, 0.2);
}

TEST(Lax, GeneralSpecResidualIsSecondOrder) {
  oracle::SpecSampler rs(46);
  const auto s = rs.any(2, false);
  const double r1 = lax_x_residual(s, 0.4, 0.1, {2.5, 1.5}, 1e-2);
  const double r2 = lax_x_residual(s, 0.4, 0.1, {2.5, 1.5}, 5e-3);
  EXPECT_NEAR(std::log2(r1 / r2), 2.0, 0.1);
}

TEST(Lax, SupportPointsAreRejected) {
  const Eigenfunction psi = reconstruct_psi(kFig1, 0, 0);
  for (Complex k : {Complex(1.04, 0.6), Complex(1.04, -0.6), Complex(-1.04, 0.6)}) {
    try {
      psi.at(k);
      FAIL() << "expected EvalOnSupport at " << k;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::EvalOnSupport);
    }
  }
  EXPECT_THROW(lax_x_residual(kFig1, 0, 0, {3, 3}, 0.0), Error);
  EXPECT_THROW(reconstruct_psi_row(kFig1, 0, 0, 3), Error);
}
