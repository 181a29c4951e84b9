#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lsw/common.hpp"
#include "lsw/model.hpp"
#include "lsw/solvers.hpp"

namespace lsw {

/// Uniform spacetime grid, ordered by (t, x).
struct GridSpec {
  double x_min = -8.0;
  double x_max = 8.0;
  double t_min = -3.0;
  double t_max = 3.0;
  std::size_t nx = 161;
  std::size_t nt = 61;

  double hx() const noexcept { return (x_max - x_min) / static_cast<double>(nx - 1); }
  double ht() const noexcept { return (t_max - t_min) / static_cast<double>(nt - 1); }
  double x(std::size_t i) const noexcept { return x_min + static_cast<double>(i) * hx(); }
  double t(std::size_t j) const noexcept { return t_min + static_cast<double>(j) * ht(); }

  /// Same domain, both spacings halved.
  GridSpec refined() const noexcept;
};

/// Throws GridTooCoarse when nx or nt is below 5, ConfigError on an empty
/// or inverted domain.
void validate_grid(const GridSpec& grid);

/// |det(I+Mt)| below `absolute`, or below relative * median(|det(I+Mt)|)
/// when no absolute threshold is given, marks a point as masked.
struct MaskPolicy {
  double relative = 1e-3;
  std::optional<double> absolute;
};

struct FieldGrid {
  GridSpec grid;
  std::vector<FieldSample> fields;
  std::vector<double> abs_det;
  std::vector<unsigned char> masked;
  double mask_threshold = 0.0;

  std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * grid.nx + i; }
  std::size_t masked_count() const noexcept;
};

/// Evaluates the fields and |det(I+Mt)| at every grid point. Points where
/// the route reports NearSingularSystem are masked, not fabricated.
FieldGrid sample_fields(const SolitonSpec& spec, const GridSpec& grid,
                        Route route = Route::linear, const MaskPolicy& mask = {},
                        const Tolerances& tol = {});

struct EquationResidual {
  std::string name;
  double max_norm = 0.0;
  double l2_norm = 0.0;
};

struct SingularPoint {
  double x;
  double t;
  double abs_det;
};

struct ResidualReport {
  std::vector<EquationResidual> equations;
  double hx = 0.0;
  double ht = 0.0;
  std::size_t masked_count = 0;
  std::size_t evaluated_points = 0;
  double mask_threshold = 0.0;
  std::vector<SingularPoint> singular_points;
};

struct ResidualOptions {
  Route route = Route::linear;
  MaskPolicy mask;
  Tolerances tol;
};

enum class PdeSystem { reduced, general };

/// Centered second-order residuals of the reduced two-field system
/// (equations "u", "v").
ResidualReport pde_residual_reduced(const SolitonSpec& spec, const GridSpec& grid,
                                    const ResidualOptions& opts = {});

/// Residuals of the three-field system (equations "u", "w", "v").
ResidualReport pde_residual_general(const SolitonSpec& spec, const GridSpec& grid,
                                    const ResidualOptions& opts = {});

/// Residuals of precomputed fields.
ResidualReport residual_from_fields(const FieldGrid& fields, PdeSystem system,
                                    int sigma);

struct ConvergenceStudy {
  std::vector<ResidualReport> levels;
  /// Least-squares slope of log(norm) against log(h), per equation.
  std::vector<double> order_l2;
  std::vector<double> order_max;
};

/// Runs `levels` dyadic refinements starting at `grid`.
ConvergenceStudy convergence_study(const SolitonSpec& spec, const GridSpec& grid,
                                   PdeSystem system, std::size_t levels = 3,
                                   const ResidualOptions& opts = {});

struct ReductionCheck {
  double max_w_defect = 0.0;    ///< max |w - sigma conj(u)| / (1 + |u|)
  double max_imv_defect = 0.0;  ///< max |Im v| / (1 + |v|)
  std::size_t checked = 0;
  std::size_t violations = 0;
};

ReductionCheck reduction_check(const FieldGrid& fields, int sigma,
                               double w_tol = 1e-10, double v_tol = 1e-12);

struct GridMinimum {
  double x;
  double t;
  double abs_det;
};

struct SingularityScan {
  std::vector<GridMinimum> local_minima;
  GridMinimum global{0.0, 0.0, 0.0};
  /// One-soliton only: the core value of the hyperbolic denominator D.
  std::optional<double> min_D_core;
  /// One-soliton only: smallest D sampled on the grid.
  std::optional<double> min_D_grid;
};

SingularityScan singularity_scan(const SolitonSpec& spec, const GridSpec& grid,
                                 const Tolerances& tol = {});

struct PeakSlice {
  double t;
  double x_peak;
  double max_abs_u;
  double min_abs_det;
  bool interior;  ///< the peak is not on the x boundary
};

struct PeakStatistics {
  std::vector<PeakSlice> slices;
  double velocity = 0.0;
  double intercept = 0.0;
  double global_max_abs_u = 0.0;
};

/// Per time slice: refined location and height of max |u|, min |det(I+Mt)|,
/// and the least-squares envelope velocity across interior peaks.
PeakStatistics peak_statistics(const SolitonSpec& spec, const GridSpec& grid,
                               Route route = Route::linear,
                               const Tolerances& tol = {});

}  // namespace lsw
