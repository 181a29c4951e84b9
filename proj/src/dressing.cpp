#include "lsw/dressing.hpp"

#include <cmath>

namespace lsw {

DressingSet build_dressing(const SolitonSpec& spec, const KernelPair& kp,
                           const Tolerances& tol) {
  const CVector k = poles_k_of(spec);
  const CVector l = poles_l_of(spec);
  const auto n = k.size();

  DressingSet d;
  d.G.resize(n, n);
  d.Gt.resize(n, n);
  d.H.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const Complex minus = k[a] - l[b];
      const Complex plus = k[a] + l[b];
      if (std::abs(minus) < tol.min_denominator ||
          std::abs(plus) < tol.min_denominator) {
        throw Error(ErrorCode::SingularDenominator,
                    "Cauchy denominator below floor while building dressing");
      }
      d.G(a, b) = kp.g[a] / minus;
      d.Gt(a, b) = kp.g[a] / plus;
      d.H(a, b) = kp.h[a] / (l[a] - k[b]);
    }
  }
  d.calG = d.G.colwise().sum().transpose();
  d.calGt = d.Gt.colwise().sum().transpose();

  const CMatrix diff = d.Gt - d.G;
  d.Mt = diff * d.H;
  d.M = d.H * diff;
  d.Nmat = d.H * (d.Gt + d.G);
  return d;
}

}  // namespace lsw
