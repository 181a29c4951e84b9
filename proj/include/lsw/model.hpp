#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lsw/common.hpp"

namespace lsw {

/// Discrete spectral data of an N-soliton solution.
///
/// In the reduced flavor the second pole family is the conjugate of the
/// first (l_j = conj(k_j)), h_j = sigma * conj(g_j), and the kernel phases
/// are described by the real offsets z0, phi0. In the general flavor every
/// quantity is an independent complex constant.
struct SolitonSpec {
  int sigma = -1;
  bool reduced = true;
  std::vector<Complex> poles_k;
  std::vector<Complex> poles_l;
  std::vector<Complex> phase_xi;
  std::vector<Complex> phase_eta;
  std::vector<double> z0;
  std::vector<double> phi0;

  std::size_t size() const noexcept { return poles_k.size(); }

  /// Offsets default to zero when left empty.
  static SolitonSpec make_reduced(int sigma, std::vector<Complex> k,
                                  std::vector<double> z0 = {},
                                  std::vector<double> phi0 = {});

  static SolitonSpec make_general(std::vector<Complex> k,
                                  std::vector<Complex> l,
                                  std::vector<Complex> xi = {},
                                  std::vector<Complex> eta = {});
};

struct Violation {
  ErrorCode code;
  std::string message;
};

class SpecError : public Error {
 public:
  explicit SpecError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<Violation> violations_;
};

/// Every invariant violation of `spec`; empty when the spec is valid.
std::vector<Violation> check_spec(const SolitonSpec& spec,
                                  const Tolerances& tol = {});

/// Returns `spec` unchanged, or throws SpecError carrying the full list.
const SolitonSpec& validate_spec(const SolitonSpec& spec,
                                 const Tolerances& tol = {});

/// Plane-wave kernels g_j, h_j at one spacetime point.
struct KernelPair {
  CVector g;
  CVector h;
};

KernelPair eval_kernels(const SolitonSpec& spec, double x, double t,
                        const Tolerances& tol = {});

/// Second pole family, conj(k) in the reduced flavor.
CVector poles_l_of(const SolitonSpec& spec);
CVector poles_k_of(const SolitonSpec& spec);

}  // namespace lsw
