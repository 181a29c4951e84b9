#include "lsw/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

#include "lsw/dressing.hpp"
#include "lsw/lax.hpp"
#include "lsw/linalg.hpp"

namespace lsw {

using nlohmann::json;

namespace {

constexpr double kRouteTol = 1e-9;
constexpr double kIdentityTol = 1e-12;
constexpr double kOrderLow = 1.8;
constexpr double kOrderHigh = 2.2;
constexpr double kSymmetryTol = 1e-8;
constexpr double kVelocityTol = 0.01;
// Residuals below this are roundoff and carry no convergence information.
constexpr double kRoundoffResidual = 1e-12;
constexpr std::size_t kMaxBinetInVerify = 4;
constexpr std::size_t kSymmetrySamples = 10;

struct Point {
  double x;
  double t;
};

/// At most ~16 x 16 points spread evenly over the grid.
std::vector<Point> sample_points(const GridSpec& g) {
  const std::size_t sx = std::max<std::size_t>(1, (g.nx - 1) / 15);
  const std::size_t st = std::max<std::size_t>(1, (g.nt - 1) / 15);
  std::vector<Point> pts;
  for (std::size_t j = 0; j < g.nt; j += st) {
    for (std::size_t i = 0; i < g.nx; i += sx) pts.push_back({g.x(i), g.t(j)});
  }
  return pts;
}

double log_slope(const std::vector<double>& h, const std::vector<double>& r) {
  const auto n = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double lx = std::log(h[i]), ly = std::log(r[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool in_window(double order) { return order >= kOrderLow && order <= kOrderHigh; }

json nan_safe(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

std::string at_point(const Point& p) {
  return "(x=" + format_double(p.x) + ", t=" + format_double(p.t) + ")";
}

SuiteResult route_suite(const RunConfig& cfg, const std::vector<Point>& pts) {
  SuiteResult s{"route_equivalence"};
  const SolitonSpec& spec = cfg.spec;
  const bool closed = spec.reduced && (spec.size() == 1 || spec.size() == 2);
  const bool binet = spec.size() <= kMaxBinetInVerify;
  double worst_det = 0, worst_closed = 0, worst_binet = 0;
  std::size_t flagged = 0;
  for (const Point& p : pts) {
    FieldSample lin;
    try {
      lin = fields_linear(spec, p.x, p.t, cfg.tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NearSingularSystem) throw;
      ++flagged;
      continue;
    }
    try {
      worst_det = std::max(worst_det, rel_diff(lin, fields_determinant(spec, p.x, p.t, cfg.tol)));
      if (closed) {
        worst_closed = std::max(worst_closed, rel_diff(lin, evaluate(Route::closed, spec, p.x, p.t, cfg.tol)));
      }
      if (binet) {
        worst_binet = std::max(worst_binet, rel_diff(lin, evaluate(Route::binet, spec, p.x, p.t, cfg.tol)));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NearSingularSystem) throw;
      s.fail("route refused a point the linear route accepted at " + at_point(p) + ": " + e.what());
    }
  }
  s.metrics = {{"points", pts.size()},
               {"flagged_near_singular", flagged},
               {"tolerance", kRouteTol},
               {"max_rel_determinant", worst_det}};
  if (closed) s.metrics["max_rel_closed"] = worst_closed;
  if (binet) s.metrics["max_rel_binet"] = worst_binet;
  if (worst_det > kRouteTol) s.fail("determinant route disagrees: " + format_double(worst_det));
  if (worst_closed > kRouteTol) s.fail("closed forms disagree: " + format_double(worst_closed));
  if (worst_binet > kRouteTol) s.fail("Cauchy-Binet route disagrees: " + format_double(worst_binet));
  return s;
}

SuiteResult identity_suite(const RunConfig& cfg, const std::vector<Point>& pts) {
  SuiteResult s{"determinant_identities"};
  const SolitonSpec& spec = cfg.spec;
  const auto n = static_cast<Eigen::Index>(spec.size());
  const CMatrix I = CMatrix::Identity(n, n);
  double swap = 0, conj_det = 0, conj_num = 0;
  for (const Point& p : pts) {
    const KernelPair kp = eval_kernels(spec, p.x, p.t, cfg.tol);
    const DressingSet d = build_dressing(spec, kp, cfg.tol);
    const Complex dt = linalg::determinant(I + d.Mt);
    const Complex d1 = linalg::determinant(I + d.M);
    swap = std::max(swap, std::abs(dt - d1) / std::max(std::abs(dt), std::abs(d1)));
    if (spec.reduced && n > 0) {
      const DetParts parts = lu_det_parts(spec, kp, cfg.tol);
      conj_det = std::max(conj_det, std::abs(parts.Dn - std::conj(parts.D1)) / std::abs(parts.D1));
      conj_num = std::max(conj_num, std::abs(parts.Omn + std::conj(parts.Om1)) /
                                        std::max(std::abs(parts.D1), std::abs(parts.Om1)));
    }
  }
  s.metrics = {{"points", pts.size()}, {"tolerance", kIdentityTol}, {"max_rel_swap", swap}};
  if (swap > kIdentityTol) s.fail("det(I+Mt) != det(I+M): " + format_double(swap));
  if (spec.reduced) {
    s.metrics["max_rel_conjugate_det"] = conj_det;
    s.metrics["max_rel_conjugate_numerator"] = conj_num;
    if (conj_det > kIdentityTol) s.fail("det(I-N) != conj det(I+M): " + format_double(conj_det));
    if (conj_num > kIdentityTol) s.fail("numerators not conjugate: " + format_double(conj_num));
  }
  return s;
}

SuiteResult reduction_suite(const RunConfig& cfg, const FieldGrid& fg) {
  SuiteResult s{"reduction"};
  const SolitonSpec& spec = cfg.spec;
  const ReductionCheck rc = reduction_check(fg, spec.sigma);
  s.metrics = {{"checked", rc.checked},
               {"masked", fg.masked_count()},
               {"max_w_defect", rc.max_w_defect},
               {"max_imv_defect", rc.max_imv_defect},
               {"violations", rc.violations}};
  if (rc.violations) s.fail(std::to_string(rc.violations) + " grid points break w = sigma conj(u) or Im v = 0");

  if (spec.size() == 1) {
    // One soliton: v has the sign of -sigma wherever it is resolved.
    std::size_t wrong = 0;
    for (std::size_t p = 0; p < fg.fields.size(); ++p) {
      if (fg.masked[p]) continue;
      const double v = fg.fields[p].v.real();
      if (v != 0.0 && (v > 0.0) == (spec.sigma > 0)) ++wrong;
    }
    s.metrics["sign_law_violations"] = wrong;
    if (wrong) s.fail(std::to_string(wrong) + " points where sign(v) != -sigma");
  }
  return s;
}

SuiteResult kinematics_suite(const RunConfig& cfg) {
  SuiteResult s{"kinematics"};
  const PeakStatistics ps = peak_statistics(cfg.spec, cfg.grid, cfg.route, cfg.tol);
  const double expected = 2.0 * cfg.spec.poles_k[0].real();
  const double rel = std::abs(ps.velocity - expected) / expected;
  s.metrics = {{"velocity", ps.velocity}, {"expected", expected}, {"rel_error", rel},
               {"tolerance", kVelocityTol}};
  if (!(rel <= kVelocityTol)) s.fail("envelope velocity off by " + format_double(rel));
  return s;
}

SuiteResult pde_suite(const RunConfig& cfg) {
  SuiteResult s{"pde_convergence"};
  const PdeSystem sys = cfg.spec.reduced ? PdeSystem::reduced : PdeSystem::general;
  const ConvergenceStudy st =
      convergence_study(cfg.spec, cfg.grid, sys, 3, {cfg.route, cfg.mask, cfg.tol});
  json levels = json::array();
  for (const ResidualReport& r : st.levels) {
    json eq = json::object();
    for (const auto& e : r.equations) eq[e.name] = {{"max", e.max_norm}, {"l2", e.l2_norm}};
    levels.push_back({{"hx", r.hx}, {"ht", r.ht}, {"masked", r.masked_count},
                      {"evaluated", r.evaluated_points}, {"mask_threshold", r.mask_threshold},
                      {"residuals", eq}});
  }
  s.metrics["levels"] = levels;
  s.metrics["window"] = {kOrderLow, kOrderHigh};
  json orders = json::object();
  const auto& names = st.levels.front().equations;
  for (std::size_t e = 0; e < names.size(); ++e) {
    orders[names[e].name] = {{"l2", nan_safe(st.order_l2[e])}, {"max", nan_safe(st.order_max[e])}};
    double largest = 0.0;
    for (const auto& r : st.levels) largest = std::max(largest, r.equations[e].max_norm);
    if (largest <= kRoundoffResidual) continue;
    if (!in_window(st.order_l2[e])) {
      s.fail("equation " + names[e].name + ": observed order " + format_double(st.order_l2[e]));
    }
  }
  s.metrics["orders"] = orders;
  return s;
}

SuiteResult lax_suite(const RunConfig& cfg) {
  SuiteResult s{"lax"};
  const SolitonSpec& spec = cfg.spec;
  const double x = 0.5 * (cfg.grid.x_min + cfg.grid.x_max);
  const double t = 0.5 * (cfg.grid.t_min + cfg.grid.t_max);
  double scale = 1.0;
  for (const Complex& k : spec.poles_k) scale = std::max(scale, std::abs(k));
  for (const Complex& l : poles_l_of(spec)) scale = std::max(scale, std::abs(l));
  const Complex k0 = Complex(3.0, 3.0) * scale;

  std::vector<double> steps, res;
  for (int i = 0; i < 3; ++i) {
    steps.push_back(cfg.fd_step * std::ldexp(1.0, -i));
    res.push_back(lax_x_residual(spec, x, t, k0, steps.back(), cfg.tol));
  }
  const double largest = *std::max_element(res.begin(), res.end());
  const double order = largest > kRoundoffResidual ? log_slope(steps, res)
                                                   : std::numeric_limits<double>::quiet_NaN();
  s.metrics = {{"x", x}, {"t", t}, {"k", {k0.real(), k0.imag()}},
               {"steps", steps}, {"residuals", res}, {"order", nan_safe(order)}};
  if (largest > kRoundoffResidual && !in_window(order)) {
    s.fail("Lax x-residual order " + format_double(order));
  }

  // Q against the solvers, then the two psi symmetries at seeded k.
  const Eigenfunction psi = reconstruct_psi(spec, x, t, cfg.tol);
  const Matrix3c q = q_from_psi(psi);
  const FieldSample f = fields_linear(spec, x, t, cfg.tol);
  const double q_defect = std::max({rel_diff(q(0, 1), f.u), rel_diff(q(1, 0), f.w),
                                    rel_diff(q(0, 2), kI * f.v)});
  s.metrics["q_vs_fields"] = q_defect;
  if (q_defect > kRouteTol) s.fail("Q from psi disagrees with the fields: " + format_double(q_defect));

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> radius(0.3 * scale, 3.0 * scale);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::vector<Complex> support;
  for (const Complex& k : spec.poles_k) support.insert(support.end(), {k, -k});
  for (const Complex& l : poles_l_of(spec)) support.insert(support.end(), {l, -l});
  auto off_support = [&](Complex k) {
    for (const Complex& p : support) {
      if (std::abs(k - p) < 0.05 * scale || std::abs(std::conj(k) - p) < 0.05 * scale) return false;
    }
    return true;
  };
  double refl = 0, conj = 0;
  std::size_t taken = 0;
  while (taken < kSymmetrySamples) {
    const Complex k = std::polar(radius(rng), angle(rng));
    if (!off_support(k)) continue;
    ++taken;
    refl = std::max(refl, reflection_defect(psi, k));
    if (spec.reduced) conj = std::max(conj, conjugation_defect(psi, k, spec.sigma));
  }
  s.metrics["reflection_defect"] = refl;
  if (refl > kSymmetryTol) s.fail("A psi(k) A != psi(-k): " + format_double(refl));
  if (spec.reduced) {
    s.metrics["conjugation_defect"] = conj;
    if (conj > kSymmetryTol) s.fail("psi^dagger(conj k) != B psi^-1(k) B: " + format_double(conj));
  }
  return s;
}

SuiteResult expansion_suite(const RunConfig& cfg, const std::vector<Point>& pts,
                            ErratumLedger& ledger) {
  SuiteResult s{"expansions"};
  const SolitonSpec& spec = cfg.spec;
  double worst = 0;
  for (const Point& p : pts) {
    const KernelPair kp = eval_kernels(spec, p.x, p.t, cfg.tol);
    if (spec.size() <= kMaxBinetInVerify) {
      const DetParts b = cauchy_binet_parts(spec, kp, &ledger, cfg.tol);
      const DetParts l = lu_det_parts(spec, kp, cfg.tol);
      worst = std::max({worst, rel_diff(b.Dt, l.Dt), rel_diff(b.Omt, l.Omt),
                        rel_diff(b.Om1, l.Om1), rel_diff(b.Dn, l.Dn),
                        rel_diff(b.Omn, l.Omn), rel_diff(b.Omw, l.Omw)});
    }
    if (spec.reduced && spec.size() == 1) one_soliton_closed(spec, p.x, p.t, &ledger, cfg.tol);
    if (spec.reduced && spec.size() == 2) two_soliton_closed(spec, kp, &ledger, cfg.tol);
  }
  s.metrics = {{"points", pts.size()},
               {"max_rel_corrected_vs_lu", worst},
               {"ledger_entries", ledger.entries().size()},
               {"all_restored", ledger.all_restored()}};
  if (spec.size() > kMaxBinetInVerify) s.metrics["skipped_binet"] = true;
  if (worst > kRouteTol) s.fail("corrected expansions disagree with LU: " + format_double(worst));
  if (!ledger.all_restored()) s.fail("an erratum entry is not restored by its correction");
  return s;
}

template <class F>
void run_suite(VerifyResult& out, const std::string& name, F&& body) {
  try {
    out.suites.push_back(body());
  } catch (const Error& e) {
    SuiteResult s{name};
    s.fail(e.what());
    out.suites.push_back(std::move(s));
  }
  if (!out.suites.back().passed) out.passed = false;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_fields_csv(const FieldGrid& fg, std::ostream& out) {
  out << "x,t,re_u,im_u,abs_u,v,re_w,im_w,abs_det,masked\n";
  const GridSpec& g = fg.grid;
  for (std::size_t j = 0; j < g.nt; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t p = fg.index(i, j);
      const FieldSample& f = fg.fields[p];
      out << format_double(g.x(i)) << ',' << format_double(g.t(j)) << ','
          << format_double(f.u.real()) << ',' << format_double(f.u.imag()) << ','
          << format_double(std::abs(f.u)) << ',' << format_double(f.v.real()) << ','
          << format_double(f.w.real()) << ',' << format_double(f.w.imag()) << ','
          << format_double(fg.abs_det[p]) << ',' << (fg.masked[p] ? 1 : 0) << '\n';
    }
  }
}

json fields_to_json(const RunConfig& cfg, const FieldGrid& fg) {
  const GridSpec& g = fg.grid;
  json cols = {{"x", json::array()},     {"t", json::array()},     {"re_u", json::array()},
               {"im_u", json::array()},  {"abs_u", json::array()}, {"re_v", json::array()},
               {"im_v", json::array()},  {"re_w", json::array()},  {"im_w", json::array()},
               {"abs_det", json::array()}, {"masked", json::array()}};
  for (std::size_t j = 0; j < g.nt; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t p = fg.index(i, j);
      const FieldSample& f = fg.fields[p];
      cols["x"].push_back(g.x(i));
      cols["t"].push_back(g.t(j));
      cols["re_u"].push_back(f.u.real());
      cols["im_u"].push_back(f.u.imag());
      cols["abs_u"].push_back(std::abs(f.u));
      cols["re_v"].push_back(f.v.real());
      cols["im_v"].push_back(f.v.imag());
      cols["re_w"].push_back(f.w.real());
      cols["im_w"].push_back(f.w.imag());
      cols["abs_det"].push_back(fg.abs_det[p]);
      cols["masked"].push_back(fg.masked[p] != 0);
    }
  }
  return {{"config", config_to_json(cfg)},
          {"mask_threshold", fg.mask_threshold},
          {"masked_count", fg.masked_count()},
          {"fields", cols}};
}

void cmd_sample(const RunConfig& cfg, std::ostream& out) {
  validate_spec(cfg.spec, cfg.tol);
  check_route(cfg);
  const FieldGrid fg = sample_fields(cfg.spec, cfg.grid, cfg.route, cfg.mask, cfg.tol);
  if (cfg.format == OutputFormat::csv) {
    write_fields_csv(fg, out);
  } else {
    out << fields_to_json(cfg, fg).dump(1) << '\n';
  }
}

json VerifyResult::to_json(const RunConfig& cfg, bool with_ledger) const {
  json suites_json = json::array();
  json failures = json::array();
  for (const SuiteResult& s : suites) {
    suites_json.push_back({{"name", s.name}, {"passed", s.passed},
                           {"metrics", s.metrics}, {"failures", s.failures}});
    for (const auto& f : s.failures) failures.push_back({{"suite", s.name}, {"message", f}});
  }
  json j = {{"passed", passed}, {"config", config_to_json(cfg)},
            {"suites", suites_json}, {"failures", failures}};
  if (with_ledger) j["erratum_ledger"] = ledger.to_json();
  return j;
}

VerifyResult run_verification(const RunConfig& cfg) {
  validate_spec(cfg.spec, cfg.tol);
  check_route(cfg);
  validate_grid(cfg.grid);

  VerifyResult out;
  const std::vector<Point> pts = sample_points(cfg.grid);
  run_suite(out, "route_equivalence", [&] { return route_suite(cfg, pts); });
  run_suite(out, "determinant_identities", [&] { return identity_suite(cfg, pts); });
  if (cfg.spec.reduced) {
    run_suite(out, "reduction", [&] {
      return reduction_suite(cfg, sample_fields(cfg.spec, cfg.grid, cfg.route, cfg.mask, cfg.tol));
    });
    if (cfg.spec.size() == 1) run_suite(out, "kinematics", [&] { return kinematics_suite(cfg); });
  }
  run_suite(out, "pde_convergence", [&] { return pde_suite(cfg); });
  run_suite(out, "lax", [&] { return lax_suite(cfg); });
  run_suite(out, "expansions", [&] { return expansion_suite(cfg, pts, out.ledger); });
  return out;
}

PeakReport run_peak(const RunConfig& cfg) {
  validate_spec(cfg.spec, cfg.tol);
  check_route(cfg);
  if (!cfg.spec.reduced) {
    throw Error(ErrorCode::ConfigError, "peak statistics need a reduced spec");
  }
  return {peak_statistics(cfg.spec, cfg.grid, cfg.route, cfg.tol),
          singularity_scan(cfg.spec, cfg.grid, cfg.tol)};
}

json peak_to_json(const RunConfig& cfg, const PeakReport& r) {
  json slices = json::array();
  for (const PeakSlice& s : r.peaks.slices) {
    slices.push_back({{"t", s.t}, {"x_peak", s.x_peak}, {"max_abs_u", s.max_abs_u},
                      {"min_abs_det", s.min_abs_det}, {"interior", s.interior}});
  }
  json minima = json::array();
  const std::size_t keep = std::min<std::size_t>(r.scan.local_minima.size(), 32);
  for (std::size_t i = 0; i < keep; ++i) {
    const GridMinimum& m = r.scan.local_minima[i];
    minima.push_back({{"x", m.x}, {"t", m.t}, {"abs_det", m.abs_det}});
  }
  json j = {{"config", config_to_json(cfg)},
            {"velocity", r.peaks.velocity},
            {"intercept", r.peaks.intercept},
            {"max_abs_u", r.peaks.global_max_abs_u},
            {"min_abs_det", {{"x", r.scan.global.x}, {"t", r.scan.global.t},
                             {"abs_det", r.scan.global.abs_det}}},
            {"local_minima", minima},
            {"slices", slices}};
  if (r.scan.min_D_core) j["min_D_core"] = *r.scan.min_D_core;
  if (r.scan.min_D_grid) j["min_D_grid"] = *r.scan.min_D_grid;
  return j;
}

void write_peak_csv(const PeakReport& r, std::ostream& out) {
  out << "t,x_peak,max_abs_u,min_abs_det,interior\n";
  for (const PeakSlice& s : r.peaks.slices) {
    out << format_double(s.t) << ',' << format_double(s.x_peak) << ','
        << format_double(s.max_abs_u) << ',' << format_double(s.min_abs_det) << ','
        << (s.interior ? 1 : 0) << '\n';
  }
}

json violations_to_json(const std::vector<Violation>& violations) {
  json a = json::array();
  for (const Violation& v : violations) {
    a.push_back({{"code", std::string(to_string(v.code))}, {"message", v.message}});
  }
  return a;
}

}  // namespace lsw
