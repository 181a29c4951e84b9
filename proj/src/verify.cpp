#include "lsw/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "lsw/dressing.hpp"
#include "lsw/linalg.hpp"

namespace lsw {

namespace {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      c_ += (sum_ - t) + v;
    } else {
      c_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

double abs_det_at(const SolitonSpec& spec, const KernelPair& kp,
                  const Tolerances& tol) {
  const auto n = static_cast<Eigen::Index>(spec.size());
  if (n == 0) return 1.0;
  const DressingSet d = build_dressing(spec, kp, tol);
  return std::abs(linalg::determinant(CMatrix::Identity(n, n) + d.Mt));
}

double median(std::vector<double> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](double a) { return !std::isfinite(a); }),
          v.end());
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

/// Slope of log(y) against log(x) by least squares.
double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

GridSpec GridSpec::refined() const noexcept {
  GridSpec g = *this;
  g.nx = 2 * (nx - 1) + 1;
  g.nt = 2 * (nt - 1) + 1;
  return g;
}

void validate_grid(const GridSpec& grid) {
  if (!(grid.x_max > grid.x_min) || !(grid.t_max > grid.t_min)) {
    throw Error(ErrorCode::ConfigError, "grid domain must satisfy x_min < x_max and t_min < t_max");
  }
  if (grid.nx < 5 || grid.nt < 5) {
    std::ostringstream os;
    os << "grid " << grid.nx << "x" << grid.nt
       << " leaves fewer than 3 interior points per direction (need nx, nt >= 5)";
    throw Error(ErrorCode::GridTooCoarse, os.str());
  }
}

std::size_t FieldGrid::masked_count() const noexcept {
  return static_cast<std::size_t>(std::count(masked.begin(), masked.end(), 1));
}

FieldGrid sample_fields(const SolitonSpec& spec, const GridSpec& grid,
                        Route route, const MaskPolicy& mask,
                        const Tolerances& tol) {
  validate_grid(grid);
  FieldGrid out;
  out.grid = grid;
  const std::size_t total = grid.nx * grid.nt;
  out.fields.assign(total, FieldSample{});
  out.abs_det.assign(total, 0.0);
  out.masked.assign(total, 0);

  for (std::size_t j = 0; j < grid.nt; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const std::size_t p = out.index(i, j);
      const double x = grid.x(i);
      const double t = grid.t(j);
      const KernelPair kp = eval_kernels(spec, x, t, tol);
      out.abs_det[p] = abs_det_at(spec, kp, tol);
      try {
        out.fields[p] = route == Route::linear ? fields_linear(spec, kp, tol)
                                               : evaluate(route, spec, x, t, tol);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NearSingularSystem) throw;
        out.masked[p] = 1;
      }
    }
  }

  out.mask_threshold = mask.absolute ? *mask.absolute : mask.relative * median(out.abs_det);
  for (std::size_t p = 0; p < total; ++p) {
    if (out.abs_det[p] < out.mask_threshold) out.masked[p] = 1;
  }
  return out;
}

ResidualReport residual_from_fields(const FieldGrid& fg, PdeSystem system,
                                    int sigma) {
  const GridSpec& g = fg.grid;
  const double hx = g.hx();
  const double ht = g.ht();
  const double s = sigma;
  const bool general = system == PdeSystem::general;

  ResidualReport rep;
  rep.hx = hx;
  rep.ht = ht;
  rep.mask_threshold = fg.mask_threshold;
  rep.masked_count = fg.masked_count();
  for (std::size_t j = 0; j < g.nt; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const auto p = fg.index(i, j);
      if (fg.masked[p]) rep.singular_points.push_back({g.x(i), g.t(j), fg.abs_det[p]});
    }
  }

  const std::size_t neq = general ? 3 : 2;
  std::vector<double> maxes(neq, 0.0);
  std::vector<CompensatedSum> sums(neq);

  auto at = [&](std::size_t i, std::size_t j) -> const FieldSample& {
    return fg.fields[fg.index(i, j)];
  };

  for (std::size_t j = 1; j + 1 < g.nt; ++j) {
    for (std::size_t i = 1; i + 1 < g.nx; ++i) {
      const bool blocked =
          fg.masked[fg.index(i, j)] || fg.masked[fg.index(i - 1, j)] ||
          fg.masked[fg.index(i + 1, j)] || fg.masked[fg.index(i, j - 1)] ||
          fg.masked[fg.index(i, j + 1)];
      if (blocked) continue;
      ++rep.evaluated_points;

      const FieldSample& c = at(i, j);
      const FieldSample& xm = at(i - 1, j);
      const FieldSample& xp = at(i + 1, j);
      const FieldSample& tm = at(i, j - 1);
      const FieldSample& tp = at(i, j + 1);

      const Complex u = c.u, v = c.v, w = c.w;
      const Complex u_t = (tp.u - tm.u) / (2.0 * ht);
      const Complex v_t = (tp.v - tm.v) / (2.0 * ht);
      const Complex u_xx = (xp.u - 2.0 * u + xm.u) / (hx * hx);
      const Complex v_x = (xp.v - xm.v) / (2.0 * hx);

      std::array<double, 3> r{};
      if (!general) {
        const Complex ru = u_t - (kI * u_xx - v_x * u + kI * v * v * u -
                                  2.0 * kI * s * u * std::norm(u));
        const Complex rv =
            v_t - 2.0 * s * (std::norm(xp.u) - std::norm(xm.u)) / (2.0 * hx);
        r = {std::abs(ru), std::abs(rv), 0.0};
      } else {
        const Complex w_t = (tp.w - tm.w) / (2.0 * ht);
        const Complex w_xx = (xp.w - 2.0 * w + xm.w) / (hx * hx);
        const Complex ru = u_t - (kI * u_xx - u * v_x - 2.0 * kI * u * u * w +
                                  kI * u * v * v);
        const Complex rw = w_t - (-kI * w_xx - w * v_x + 2.0 * kI * u * w * w -
                                  kI * w * v * v);
        const Complex rv = v_t - 2.0 * (xp.u * xp.w - xm.u * xm.w) / (2.0 * hx);
        r = {std::abs(ru), std::abs(rw), std::abs(rv)};
      }
      for (std::size_t e = 0; e < neq; ++e) {
        maxes[e] = std::max(maxes[e], r[e]);
        sums[e].add(r[e] * r[e]);
      }
    }
  }
  if (rep.evaluated_points == 0) {
    throw Error(ErrorCode::GridTooCoarse, "no interior point with an unmasked stencil");
  }

  const std::vector<std::string> names =
      general ? std::vector<std::string>{"u", "w", "v"}
              : std::vector<std::string>{"u", "v"};
  for (std::size_t e = 0; e < neq; ++e) {
    rep.equations.push_back(
        {names[e], maxes[e], std::sqrt(hx * ht * sums[e].value())});
  }
  return rep;
}

ResidualReport pde_residual_reduced(const SolitonSpec& spec, const GridSpec& grid,
                                    const ResidualOptions& opts) {
  if (!spec.reduced) {
    throw Error(ErrorCode::ConfigError, "reduced residual needs a reduced spec");
  }
  const FieldGrid fg = sample_fields(spec, grid, opts.route, opts.mask, opts.tol);
  return residual_from_fields(fg, PdeSystem::reduced, spec.sigma);
}

ResidualReport pde_residual_general(const SolitonSpec& spec, const GridSpec& grid,
                                    const ResidualOptions& opts) {
  const FieldGrid fg = sample_fields(spec, grid, opts.route, opts.mask, opts.tol);
  return residual_from_fields(fg, PdeSystem::general, spec.sigma);
}

ConvergenceStudy convergence_study(const SolitonSpec& spec, const GridSpec& grid,
                                   PdeSystem system, std::size_t levels,
                                   const ResidualOptions& opts) {
  if (levels < 2) throw Error(ErrorCode::ConfigError, "convergence study needs >= 2 levels");
  ConvergenceStudy study;
  GridSpec g = grid;
  for (std::size_t lvl = 0; lvl < levels; ++lvl) {
    study.levels.push_back(system == PdeSystem::reduced
                               ? pde_residual_reduced(spec, g, opts)
                               : pde_residual_general(spec, g, opts));
    g = g.refined();
  }
  const std::size_t neq = study.levels.front().equations.size();
  for (std::size_t e = 0; e < neq; ++e) {
    std::vector<double> h, l2, mx;
    for (const auto& rep : study.levels) {
      h.push_back(rep.hx);
      l2.push_back(rep.equations[e].l2_norm);
      mx.push_back(rep.equations[e].max_norm);
    }
    // Exact solutions with an all-zero residual have no measurable order.
    const bool zero = std::all_of(l2.begin(), l2.end(), [](double v) { return v == 0.0; });
    study.order_l2.push_back(zero ? std::numeric_limits<double>::quiet_NaN() : log_slope(h, l2));
    study.order_max.push_back(zero ? std::numeric_limits<double>::quiet_NaN() : log_slope(h, mx));
  }
  return study;
}

ReductionCheck reduction_check(const FieldGrid& fg, int sigma, double w_tol,
                               double v_tol) {
  ReductionCheck rc;
  for (std::size_t p = 0; p < fg.fields.size(); ++p) {
    if (fg.masked[p]) continue;
    const FieldSample& f = fg.fields[p];
    const double wd = std::abs(f.w - static_cast<double>(sigma) * std::conj(f.u)) /
                      (1.0 + std::abs(f.u));
    const double vd = std::abs(f.v.imag()) / (1.0 + std::abs(f.v));
    rc.max_w_defect = std::max(rc.max_w_defect, wd);
    rc.max_imv_defect = std::max(rc.max_imv_defect, vd);
    ++rc.checked;
    if (wd > w_tol || vd > v_tol) ++rc.violations;
  }
  return rc;
}

SingularityScan singularity_scan(const SolitonSpec& spec, const GridSpec& grid,
                                 const Tolerances& tol) {
  validate_grid(grid);
  const std::size_t nx = grid.nx, nt = grid.nt;
  std::vector<double> a(nx * nt);
  for (std::size_t j = 0; j < nt; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      a[j * nx + i] = abs_det_at(spec, eval_kernels(spec, grid.x(i), grid.t(j), tol), tol);
    }
  }

  SingularityScan scan;
  scan.global = {grid.x(0), grid.t(0), a[0]};
  for (std::size_t j = 0; j < nt; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double v = a[j * nx + i];
      if (v < scan.global.abs_det) scan.global = {grid.x(i), grid.t(j), v};
      if (i == 0 || j == 0 || i + 1 == nx || j + 1 == nt) continue;
      bool is_min = true;
      for (int dj = -1; dj <= 1 && is_min; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          if (!di && !dj) continue;
          const auto q = (j + static_cast<std::size_t>(dj + 1) - 1) * nx + i +
                         static_cast<std::size_t>(di + 1) - 1;
          if (a[q] < v) {
            is_min = false;
            break;
          }
        }
      }
      if (is_min) scan.local_minima.push_back({grid.x(i), grid.t(j), v});
    }
  }
  std::sort(scan.local_minima.begin(), scan.local_minima.end(),
            [](const GridMinimum& p, const GridMinimum& q) { return p.abs_det < q.abs_det; });

  if (spec.reduced && spec.size() == 1) {
    const Complex k = spec.poles_k[0];
    scan.min_D_core = 2.0 - 2.0 * spec.sigma * k.real() / std::abs(k);
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nt; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        dmin = std::min(dmin, one_soliton_closed(spec, grid.x(i), grid.t(j), nullptr, tol).D);
      }
    }
    scan.min_D_grid = dmin;
  }
  return scan;
}

namespace {

/// Golden-section maximization of |u(., t)| on [a, b].
std::pair<double, double> refine_peak(Route route, const SolitonSpec& spec,
                                      double t, double a, double b,
                                      const Tolerances& tol) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double x) { return std::abs(evaluate(route, spec, x, t, tol).u); };
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-11 * (1.0 + std::abs(a))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace

PeakStatistics peak_statistics(const SolitonSpec& spec, const GridSpec& grid,
                               Route route, const Tolerances& tol) {
  validate_grid(grid);
  PeakStatistics stats;
  std::vector<double> ts, xs;
  for (std::size_t j = 0; j < grid.nt; ++j) {
    const double t = grid.t(j);
    std::size_t best = 0;
    double best_u = -1.0;
    double min_det = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      const KernelPair kp = eval_kernels(spec, x, t, tol);
      min_det = std::min(min_det, abs_det_at(spec, kp, tol));
      double au = 0.0;
      try {
        au = std::abs(evaluate(route, spec, x, t, tol).u);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NearSingularSystem) throw;
        continue;
      }
      if (au > best_u) {
        best_u = au;
        best = i;
      }
    }
    PeakSlice slice{t, grid.x(best), std::max(best_u, 0.0), min_det, false};
    if (best > 0 && best + 1 < grid.nx && spec.size() > 0) {
      const auto [xp, up] = refine_peak(route, spec, t, grid.x(best - 1), grid.x(best + 1), tol);
      slice.x_peak = xp;
      slice.max_abs_u = std::max(up, best_u);
      slice.interior = true;
      ts.push_back(t);
      xs.push_back(xp);
    }
    stats.global_max_abs_u = std::max(stats.global_max_abs_u, slice.max_abs_u);
    stats.slices.push_back(slice);
  }

  if (ts.size() >= 2) {
    const auto n = static_cast<double>(ts.size());
    double st = 0, sx = 0, stt = 0, stx = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      st += ts[i];
      sx += xs[i];
      stt += ts[i] * ts[i];
      stx += ts[i] * xs[i];
    }
    stats.velocity = (n * stx - st * sx) / (n * stt - st * st);
    stats.intercept = (sx - stats.velocity * st) / n;
  }
  return stats;
}

}  // namespace lsw
