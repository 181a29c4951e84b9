#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "lsw/dressing.hpp"
#include "lsw/linalg.hpp"
#include "lsw/solvers.hpp"
#include "oracles.hpp"

using namespace lsw;

namespace {

double worst_member(const DetParts& a, const DetParts& b) {
  return std::max({rel_diff(a.Dt, b.Dt), rel_diff(a.Omt, b.Omt), rel_diff(a.D1, b.D1),
                   rel_diff(a.Om1, b.Om1), rel_diff(a.Dn, b.Dn), rel_diff(a.Omn, b.Omn),
                   rel_diff(a.Omw, b.Omw)});
}

}  // namespace

TEST(CauchyBinet, OneSolitonDeterminant) {
  const Complex k(1.04, 0.6), kb = std::conj(k);
  const auto s = SolitonSpec::make_reduced(-1, {k}, {0.2}, {0.4});
  const KernelPair kp = eval_kernels(s, 0.5, -0.3);
  const Complex term = kb * kp.g[0] * kp.h[0] / ((k * k - kb * kb) * (k - kb));
  const DetParts p = cauchy_binet_parts(s, kp);
  const Complex lu = linalg::determinant(CMatrix::Identity(1, 1) + build_dressing(s, kp).Mt);
  EXPECT_LT(std::abs(p.Dt - (1.0 + 2.0 * term)), 1e-14);
  EXPECT_LT(rel_diff(p.Dt, lu), 1e-13);
  // The sign-flipped prefactor misses by a visible amount.
  EXPECT_GT(rel_diff(literal_expansions(s, kp).Dt, lu), 1e-3);
}

TEST(CauchyBinet, VacuumSums) {
  const auto s = SolitonSpec::make_general({}, {});
  const DetParts p = cauchy_binet_parts(s, 0.0, 0.0);
  EXPECT_EQ(p.Dt, Complex(1.0));
  EXPECT_EQ(p.D1, Complex(1.0));
  EXPECT_EQ(p.Dn, Complex(1.0));
  EXPECT_EQ(p.Omt, Complex(0.0));
  EXPECT_EQ(p.Om1, Complex(0.0));
  EXPECT_EQ(p.Omw, Complex(0.0));
}

TEST(CauchyBinet, EveryMemberMatchesLu) {
  oracle::SpecSampler rs(51);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 12; ++trial) {
      const auto s = rs.any(n, trial % 2 == 0);
      const KernelPair kp = eval_kernels(s, rs.uniform(-3, 3), rs.uniform(-3, 3));
      EXPECT_LT(worst_member(cauchy_binet_parts(s, kp), lu_det_parts(s, kp)), 1e-9) << "N=" << n;
    }
  }
}

TEST(CauchyBinet, LedgerRecordsLiteralMismatchAndRestoresIt) {
  const auto s = SolitonSpec::make_reduced(-1, {{1.04, 0.6}, {2.0, 0.4}});
  ErratumLedger ledger;
  oracle::SpecSampler rs(52);
  for (int i = 0; i < 50; ++i) {
    cauchy_binet_parts(s, rs.uniform(-4, 4), rs.uniform(-2, 2), &ledger);
    two_soliton_closed(s, rs.uniform(-4, 4), rs.uniform(-2, 2), &ledger);
  }
  ASSERT_FALSE(ledger.empty());
  for (ExpansionForm f : {ExpansionForm::det_expansion, ExpansionForm::u_numerator_expansion,
                          ExpansionForm::v_numerator_expansion,
                          ExpansionForm::two_soliton_v_numerator}) {
    const ErratumEntry* e = ledger.find(f);
    ASSERT_NE(e, nullptr) << to_string(f);
    EXPECT_GT(e->max_rel_literal, 1e-6) << to_string(f);
    EXPECT_TRUE(e->restored(1e-9)) << to_string(f);
    EXPECT_FALSE(e->literal.empty());
    EXPECT_FALSE(e->corrected.empty());
  }
  EXPECT_EQ(ledger.find(ExpansionForm::two_soliton_denominator), nullptr);
  EXPECT_TRUE(ledger.all_restored());
  const auto j = ledger.to_json();
  EXPECT_TRUE(j.dump().find("v_numerator_expansion") != std::string::npos);
}

TEST(CauchyBinet, TooManySolitons) {
  std::vector<Complex> k;
  for (int j = 0; j < 9; ++j) k.emplace_back(0.2 + 0.15 * j, 0.3 + 0.05 * j);
  const auto s = SolitonSpec::make_reduced(1, k);
  ASSERT_TRUE(check_spec(s).empty());
  try {
    cauchy_binet_parts(s, 0.0, 0.0);
    FAIL() << "expected TooManySolitons";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManySolitons);
  }
}

TEST(ErratumLedger, QuietObservationsAreDropped) {
  ErratumLedger ledger(1e-9);
  ledger.observe(ExpansionForm::det_expansion, 1e-12, 1e-13);
  EXPECT_TRUE(ledger.empty());
  ledger.observe(ExpansionForm::det_expansion, std::numeric_limits<double>::quiet_NaN(), 0.0);
  ASSERT_FALSE(ledger.empty());
  EXPECT_TRUE(std::isnan(ledger.entries()[0].max_rel_literal));
}

TEST(ErratumLedger, MergeIsOrderInsensitive) {
  ErratumLedger a, b;
  a.observe(ExpansionForm::det_expansion, 0.5, 1e-12);
  a.observe(ExpansionForm::u_numerator_expansion, 0.1, 1e-11);
  b.observe(ExpansionForm::det_expansion, 0.7, 2e-12);
  ErratumLedger ab, ba;
  ab.merge(a);
  ab.merge(b);
  ba.merge(b);
  ba.merge(a);
  for (ExpansionForm f : {ExpansionForm::det_expansion, ExpansionForm::u_numerator_expansion}) {
    ASSERT_NE(ab.find(f), nullptr);
    ASSERT_NE(ba.find(f), nullptr);
    EXPECT_EQ(ab.find(f)->max_rel_literal, ba.find(f)->max_rel_literal);
    EXPECT_EQ(ab.find(f)->max_rel_corrected, ba.find(f)->max_rel_corrected);
    EXPECT_EQ(ab.find(f)->samples, ba.find(f)->samples);
  }
  EXPECT_DOUBLE_EQ(ab.find(ExpansionForm::det_expansion)->max_rel_literal, 0.7);
  EXPECT_EQ(ab.find(ExpansionForm::det_expansion)->samples, 2u);
}
