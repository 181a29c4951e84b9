#pragma once

#include <cstddef>
#include <string_view>

#include "lsw/common.hpp"
#include "lsw/dressing.hpp"
#include "lsw/erratum.hpp"
#include "lsw/model.hpp"

namespace lsw {

/// Field values at one spacetime point: short-wave envelope u, long-wave
/// amplitude v and the companion field w (= sigma conj(u) when reduced).
struct FieldSample {
  Complex u;
  Complex v;
  Complex w;
};

/// Determinants and bordered increments behind the determinant route.
struct DetParts {
  Complex Dt;   ///< det(I + Mt)
  Complex Omt;  ///< det(I + Mt + g^T E) - det(I + Mt)
  Complex D1;   ///< det(I + M)
  Complex Om1;  ///< det(I + M + h^T (calG - calGt)) - det(I + M)
  Complex Dn;   ///< det(I - N)
  Complex Omn;  ///< det(I - N + h^T (calG + calGt)) - det(I - N)
  Complex Omw;  ///< det(I - N + h^T E) - det(I - N)
};

enum class Route { linear, determinant, closed, binet };

std::string_view to_string(Route route) noexcept;
Route route_from_string(std::string_view name);

// Linear-solve route (the designated oracle).
FieldSample fields_linear(const SolitonSpec& spec, const KernelPair& kp,
                          const Tolerances& tol = {});
FieldSample fields_linear(const SolitonSpec& spec, double x, double t,
                          const Tolerances& tol = {});

/// LU determinants of the explicitly built matrices.
DetParts lu_det_parts(const SolitonSpec& spec, const KernelPair& kp,
                      const Tolerances& tol = {});

// Determinant-ratio route.
FieldSample fields_determinant(const SolitonSpec& spec, const KernelPair& kp,
                               const Tolerances& tol = {});
FieldSample fields_determinant(const SolitonSpec& spec, double x, double t,
                               const Tolerances& tol = {});

struct OneSolitonForms {
  FieldSample direct;       ///< rational form in g_1
  FieldSample theta_form;   ///< hyperbolic form
  double exp_minus_2theta;  ///< positive for admissible reduced poles
  double theta;
  double D;
  double alpha;
};

OneSolitonForms one_soliton_closed(const SolitonSpec& spec, double x, double t,
                                   ErratumLedger* ledger = nullptr,
                                   const Tolerances& tol = {});

struct TwoSolitonForms {
  FieldSample fields;  ///< u = -i Omega/D, v = 2 Re(Omega1/D)
  Complex D;
  Complex Omega;
  Complex Omega1;
  Complex Omega1_literal;
  Complex T;
};

/// Explicit N=2 formulas. When `ledger` is set, literal-versus-linear
/// disagreements are recorded in it.
TwoSolitonForms two_soliton_closed(const SolitonSpec& spec,
                                   const KernelPair& kp,
                                   ErratumLedger* ledger = nullptr,
                                   const Tolerances& tol = {});
TwoSolitonForms two_soliton_closed(const SolitonSpec& spec, double x, double t,
                                   ErratumLedger* ledger = nullptr,
                                   const Tolerances& tol = {});

inline constexpr std::size_t kMaxBinetSolitons = 8;

/// Cauchy-Binet expansions of every DetParts member. Each member is
/// cross-checked against LU; literal-form mismatches go to `ledger`.
DetParts cauchy_binet_parts(const SolitonSpec& spec, const KernelPair& kp,
                            ErratumLedger* ledger = nullptr,
                            const Tolerances& tol = {});
DetParts cauchy_binet_parts(const SolitonSpec& spec, double x, double t,
                            ErratumLedger* ledger = nullptr,
                            const Tolerances& tol = {});

/// Literal (uncorrected) expansions, exposed for the erratum comparison.
struct LiteralExpansions {
  Complex Dt;
  Complex Omt;
  Complex Om1;
};
LiteralExpansions literal_expansions(const SolitonSpec& spec,
                                     const KernelPair& kp);

/// Fields from the principal-minor expansions.
FieldSample fields_binet(const SolitonSpec& spec, const KernelPair& kp,
                         const Tolerances& tol = {});

/// Dispatches to the selected route. `closed` requires a reduced N in {1,2}.
FieldSample evaluate(Route route, const SolitonSpec& spec, double x, double t,
                     const Tolerances& tol = {});

/// |a - b| / max(|a|, |b|, 1): relative for O(1) and larger values,
/// absolute below. Exponentially decayed far-field values carry roundoff
/// of the O(1) terms they cancel from, so a pure ratio would measure noise.
double rel_diff(Complex a, Complex b) noexcept;
double rel_diff(const FieldSample& a, const FieldSample& b) noexcept;

}  // namespace lsw
