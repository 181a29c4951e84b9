#pragma once

#include "lsw/common.hpp"
#include "lsw/model.hpp"

namespace lsw {

/// Cauchy-type dressing matrices at one spacetime point.
///
///   G_nj  = g_n / (k_n - l_j)      Gt_nj = g_n / (k_n + l_j)
///   H_mn  = h_m / (l_m - k_n)
///   calG  = column sums of G       calGt = column sums of Gt
///   Mt = (Gt - G) H,   M = H (Gt - G),   Nmat = H (Gt + G)
struct DressingSet {
  CMatrix G, Gt, H;
  CVector calG, calGt;
  CMatrix Mt, M, Nmat;

  Eigen::Index size() const noexcept { return G.rows(); }
};

DressingSet build_dressing(const SolitonSpec& spec, const KernelPair& kp,
                           const Tolerances& tol = {});

}  // namespace lsw
