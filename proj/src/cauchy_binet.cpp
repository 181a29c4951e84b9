// Principal-minor expansions of the dressing determinants.
//
// With x = k^2, y = l^2, the factor Gt - G has entries -2 g_n l_j/(k_n^2 - l_j^2)
// and Gt + G has 2 g_n k_n/(k_n^2 - l_j^2), so every minor reachable through
// Cauchy-Binet is a product of Cauchy determinants. All terms share
//
//   S(A,B) = prod_{a<a' in A}(k_a^2-k_a'^2)(k_a-k_a')
//          * prod_{b<b' in B}(l_b^2-l_b'^2)(l_b-l_b')
//          / prod_{a in A, b in B}(k_a^2-l_b^2)(k_a-l_b)
//
// with A a set of k-indices and B a set of l-indices.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <vector>

#include "lsw/solvers.hpp"

namespace lsw {

namespace {

using Mask = unsigned;

class Expander {
 public:
  Expander(const SolitonSpec& spec, const KernelPair& kp)
      : k_(poles_k_of(spec)), l_(poles_l_of(spec)), g_(kp.g), h_(kp.h),
        n_(static_cast<int>(spec.size())) {
    const auto n = static_cast<std::size_t>(n_);
    kk_.assign(n * n, 1.0);
    ll_.assign(n * n, 1.0);
    kl_.assign(n * n, 1.0);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) {
        kk_[idx(a, b)] = (k_[a] * k_[a] - k_[b] * k_[b]) * (k_[a] - k_[b]);
        ll_[idx(a, b)] = (l_[a] * l_[a] - l_[b] * l_[b]) * (l_[a] - l_[b]);
        kl_[idx(a, b)] = (k_[a] * k_[a] - l_[b] * l_[b]) * (k_[a] - l_[b]);
      }
    }
  }

  int size() const { return n_; }

  Complex structure(Mask A, Mask B) const {
    Complex s = 1.0;
    for (int a = 0; a < n_; ++a) {
      if (!(A >> a & 1u)) continue;
      for (int a2 = a + 1; a2 < n_; ++a2) {
        if (A >> a2 & 1u) s *= kk_[idx(a, a2)];
      }
      for (int b = 0; b < n_; ++b) {
        if (B >> b & 1u) s /= kl_[idx(a, b)];
      }
    }
    for (int b = 0; b < n_; ++b) {
      if (!(B >> b & 1u)) continue;
      for (int b2 = b + 1; b2 < n_; ++b2) {
        if (B >> b2 & 1u) s *= ll_[idx(b, b2)];
      }
    }
    return s;
  }

  // Weight products over a mask.
  Complex prod_g(Mask A) const { return prod(A, [&](int a) { return g_[a]; }); }
  Complex prod_kg(Mask A) const { return prod(A, [&](int a) { return k_[a] * g_[a]; }); }
  Complex prod_h(Mask B) const { return prod(B, [&](int b) { return h_[b]; }); }
  Complex prod_lh(Mask B) const { return prod(B, [&](int b) { return l_[b] * h_[b]; }); }

  // prod_{r in A}(k_n^2 - k_r^2) / prod_{j in B}(k_n^2 - l_j^2)
  Complex coupling(int n, Mask A, Mask B) const {
    const Complex kn2 = k_[n] * k_[n];
    Complex c = 1.0;
    for (int r = 0; r < n_; ++r) {
      if (A >> r & 1u) c *= kn2 - k_[r] * k_[r];
      if (B >> r & 1u) c /= kn2 - l_[r] * l_[r];
    }
    return c;
  }

  Complex k(int n) const { return k_[n]; }
  Complex g(int n) const { return g_[n]; }

  /// Masks of popcount `nu` over n bits, in increasing order.
  const std::vector<Mask>& subsets(int nu) const {
    if (subsets_.empty()) {
      subsets_.resize(static_cast<std::size_t>(n_) + 1);
      for (Mask m = 0; m < (1u << n_); ++m) {
        subsets_[static_cast<std::size_t>(std::popcount(m))].push_back(m);
      }
    }
    return subsets_[static_cast<std::size_t>(nu)];
  }

 private:
  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(b);
  }

  template <class F>
  Complex prod(Mask m, F f) const {
    Complex p = 1.0;
    for (int i = 0; i < n_; ++i) {
      if (m >> i & 1u) p *= f(i);
    }
    return p;
  }

  CVector k_, l_, g_, h_;
  int n_;
  std::vector<Complex> kk_, ll_, kl_;
  mutable std::vector<std::vector<Mask>> subsets_;
};

struct Sums {
  Complex Dt{1.0}, Omt{0.0}, Om1{0.0}, Dn{1.0}, Omn{0.0}, Omw{0.0};
  Complex Dt_lit{1.0}, Omt_lit{0.0}, Om1_lit{0.0};
};

Sums expand(const SolitonSpec& spec, const KernelPair& kp) {
  Sums s;
  const Expander ex(spec, kp);
  const int n = ex.size();
  for (int nu = 1; nu <= n; ++nu) {
    const double two_nu = std::ldexp(1.0, nu);
    const double sign_nu = (nu % 2 == 0) ? 1.0 : -1.0;
    // Principal minors: |A| = |B| = nu.
    for (Mask A : ex.subsets(nu)) {
      for (Mask B : ex.subsets(nu)) {
        const Complex st = ex.structure(A, B);
        const Complex dt = ex.prod_g(A) * ex.prod_lh(B) * st;
        s.Dt += two_nu * dt;
        s.Dt_lit += sign_nu * two_nu * dt;
        s.Dn += two_nu * ex.prod_h(B) * ex.prod_kg(A) * st;
      }
    }
    // Bordered minors: one index of the nu-set is the border.
    for (Mask J : ex.subsets(nu)) {
      for (Mask R : ex.subsets(nu - 1)) {
        const Complex st_kl = ex.structure(J, R);  // J over k, R over l
        const Complex st_lk = ex.structure(R, J);  // R over k, J over l
        const Complex omt = ex.prod_g(J) * ex.prod_lh(R) * st_kl;
        s.Omt += 0.5 * two_nu * omt;
        s.Omt_lit += -sign_nu * 0.5 * two_nu * omt;
        s.Omw += 0.5 * two_nu * ex.prod_h(J) * ex.prod_kg(R) * st_lk;

        const Complex base_1 = ex.prod_lh(J) * ex.prod_g(R) * st_lk;
        const Complex base_n = ex.prod_h(J) * ex.prod_kg(R) * st_lk;
        for (int m = 0; m < n; ++m) {
          s.Om1_lit += -sign_nu * two_nu * ex.g(m) * base_1;
          if (R >> m & 1u) continue;
          const Complex c = ex.coupling(m, R, J);
          s.Om1 += two_nu * ex.g(m) * base_1 * c;
          s.Omn += two_nu * ex.k(m) * ex.g(m) * base_n * c;
        }
      }
    }
  }
  return s;
}

}  // namespace

LiteralExpansions literal_expansions(const SolitonSpec& spec,
                                     const KernelPair& kp) {
  if (spec.size() > kMaxBinetSolitons) {
    throw Error(ErrorCode::TooManySolitons,
                "expansions are limited to N <= 8");
  }
  const Sums s = expand(spec, kp);
  return {s.Dt_lit, s.Omt_lit, s.Om1_lit};
}

DetParts cauchy_binet_parts(const SolitonSpec& spec, const KernelPair& kp,
                            ErratumLedger* ledger, const Tolerances& tol) {
  if (spec.size() > kMaxBinetSolitons) {
    throw Error(ErrorCode::TooManySolitons,
                "Cauchy-Binet expansion is limited to N <= 8, got N=" +
                    std::to_string(spec.size()));
  }
  const Sums s = expand(spec, kp);
  DetParts p{s.Dt, s.Omt, s.Dt, s.Om1, s.Dn, s.Omn, s.Omw};

  if (ledger && spec.size() > 0) {
    const DetParts lu = lu_det_parts(spec, kp, tol);
    ledger->observe(ExpansionForm::det_expansion, rel_diff(s.Dt_lit, lu.Dt),
                    std::max(rel_diff(p.Dt, lu.Dt), rel_diff(p.D1, lu.D1)));
    ledger->observe(ExpansionForm::u_numerator_expansion,
                    rel_diff(s.Omt_lit, lu.Omt), rel_diff(p.Omt, lu.Omt));
    ledger->observe(ExpansionForm::v_numerator_expansion,
                    rel_diff(s.Om1_lit, lu.Om1), rel_diff(p.Om1, lu.Om1));
    // The companion expansions have no literal counterpart; any mismatch is
    // filed under the family it belongs to.
    const double dn = rel_diff(p.Dn, lu.Dn);
    ledger->observe(ExpansionForm::det_expansion, dn, dn);
    const double om = std::max(rel_diff(p.Omn, lu.Omn), rel_diff(p.Omw, lu.Omw));
    ledger->observe(ExpansionForm::v_numerator_expansion, om, om);
  }
  return p;
}

DetParts cauchy_binet_parts(const SolitonSpec& spec, double x, double t,
                            ErratumLedger* ledger, const Tolerances& tol) {
  if (spec.size() > kMaxBinetSolitons) {
    throw Error(ErrorCode::TooManySolitons,
                "Cauchy-Binet expansion is limited to N <= 8, got N=" +
                    std::to_string(spec.size()));
  }
  return cauchy_binet_parts(spec, eval_kernels(spec, x, t, tol), ledger, tol);
}

}  // namespace lsw
