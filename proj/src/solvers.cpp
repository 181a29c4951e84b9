#include "lsw/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "lsw/linalg.hpp"

namespace lsw {

std::string_view to_string(Route route) noexcept {
  switch (route) {
    case Route::linear: return "linear";
    case Route::determinant: return "determinant";
    case Route::closed: return "closed";
    case Route::binet: return "binet";
  }
  return "linear";
}

Route route_from_string(std::string_view name) {
  if (name == "linear") return Route::linear;
  if (name == "determinant") return Route::determinant;
  if (name == "closed") return Route::closed;
  if (name == "binet") return Route::binet;
  throw Error(ErrorCode::ConfigError,
              "unknown route '" + std::string(name) +
                  "' (expected linear|determinant|closed|binet)");
}

double rel_diff(Complex a, Complex b) noexcept {
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) / scale;
}

double rel_diff(const FieldSample& a, const FieldSample& b) noexcept {
  return std::max({rel_diff(a.u, b.u), rel_diff(a.v, b.v), rel_diff(a.w, b.w)});
}

namespace {

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

void require_regular(Complex det, const CMatrix& m, const Tolerances& tol,
                     const char* what) {
  const double bound = linalg::hadamard_bound(m);
  if (!(std::abs(det) >= tol.singular_det * bound)) {
    std::ostringstream os;
    os << what << " = " << std::abs(det) << " is below " << tol.singular_det
       << " of its Hadamard bound " << bound;
    throw Error(ErrorCode::NearSingularSystem, os.str());
  }
}

}  // namespace

FieldSample fields_linear(const SolitonSpec& spec, const KernelPair& kp,
                          const Tolerances& tol) {
  const auto n = static_cast<Eigen::Index>(spec.size());
  if (n == 0) return {};
  const DressingSet d = build_dressing(spec, kp, tol);
  const CMatrix I = identity(n);
  const CVector E = CVector::Ones(n);

  // Every system has the form (I + X Y) z = r with X, Y carrying the kernel
  // scales; solve_factored never forms the (possibly graded) product.
  const CMatrix gdiff = d.Gt - d.G;

  // u = -i E (I + Mt)^{-1} g^T,  Mt = (Gt - G) H
  const CVector phi = linalg::solve_factored(gdiff, d.H, kp.g, tol.max_condition);
  const Complex u = -kI * E.dot(phi);

  // v = [(calG - calGt)(I + M)^{-1} - (calG + calGt)(I - N)^{-1}] h^T, as
  // transposed systems: (I + M)^T = I + (Gt - G)^T H^T, (I - N)^T = I - (Gt + G)^T H^T.
  const CMatrix ht = d.H.transpose();
  const CMatrix gsum_t = -(d.Gt + d.G).transpose();
  const CVector diff_row =
      linalg::solve_factored(gdiff.transpose(), ht, d.calG - d.calGt, tol.max_condition);
  const CVector sum_row =
      linalg::solve_factored(gsum_t, ht, d.calG + d.calGt, tol.max_condition);
  const Complex v = (diff_row - sum_row).transpose() * kp.h;

  // w = i E (I - N)^{-1} h^T
  const CVector e_row = linalg::solve_factored(gsum_t, ht, E, tol.max_condition);
  const Complex w = kI * Complex(e_row.transpose() * kp.h);
  return {u, v, w};
}

FieldSample fields_linear(const SolitonSpec& spec, double x, double t,
                          const Tolerances& tol) {
  return fields_linear(spec, eval_kernels(spec, x, t, tol), tol);
}

DetParts lu_det_parts(const SolitonSpec& spec, const KernelPair& kp,
                      const Tolerances& tol) {
  const auto n = static_cast<Eigen::Index>(spec.size());
  if (n == 0) return {1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0};
  const DressingSet d = build_dressing(spec, kp, tol);
  const CMatrix I = identity(n);
  const CVector E = CVector::Ones(n);

  const CMatrix a_t = I + d.Mt;
  const CMatrix a_1 = I + d.M;
  const CMatrix a_n = I - d.Nmat;

  DetParts p;
  p.Dt = linalg::determinant(a_t);
  p.Omt = linalg::bordered_increment(a_t, kp.g, E);
  p.D1 = linalg::determinant(a_1);
  p.Om1 = linalg::bordered_increment(a_1, kp.h, d.calG - d.calGt);
  p.Dn = linalg::determinant(a_n);
  p.Omn = linalg::bordered_increment(a_n, kp.h, d.calG + d.calGt);
  p.Omw = linalg::bordered_increment(a_n, kp.h, E);
  return p;
}

namespace {

FieldSample fields_from_parts(const SolitonSpec& spec, const DetParts& p) {
  FieldSample f;
  f.u = -kI * p.Omt / p.Dt;
  if (spec.reduced) {
    f.v = 2.0 * (p.Om1 / p.D1).real();
    f.w = static_cast<double>(spec.sigma) * std::conj(f.u);
  } else {
    f.v = p.Om1 / p.D1 - p.Omn / p.Dn;
    f.w = kI * p.Omw / p.Dn;
  }
  return f;
}

}  // namespace

FieldSample fields_determinant(const SolitonSpec& spec, const KernelPair& kp,
                               const Tolerances& tol) {
  const auto n = static_cast<Eigen::Index>(spec.size());
  if (n == 0) return {};
  const DressingSet d = build_dressing(spec, kp, tol);
  const DetParts p = lu_det_parts(spec, kp, tol);
  const CMatrix I = identity(n);
  require_regular(p.Dt, I + d.Mt, tol, "det(I+Mt)");
  require_regular(p.D1, I + d.M, tol, "det(I+M)");
  require_regular(p.Dn, I - d.Nmat, tol, "det(I-N)");

  FieldSample f;
  f.u = -kI * p.Omt / p.Dt;
  f.v = spec.reduced ? Complex(2.0 * (p.Om1 / p.D1).real(), 0.0)
                     : p.Om1 / p.D1 - p.Omn / p.Dn;
  // w keeps its own bordered determinant in both flavors.
  f.w = kI * p.Omw / p.Dn;
  return f;
}

FieldSample fields_determinant(const SolitonSpec& spec, double x, double t,
                               const Tolerances& tol) {
  return fields_determinant(spec, eval_kernels(spec, x, t, tol), tol);
}

OneSolitonForms one_soliton_closed(const SolitonSpec& spec, double x, double t,
                                   ErratumLedger* ledger,
                                   const Tolerances& tol) {
  if (!spec.reduced || spec.size() != 1) {
    throw Error(ErrorCode::NotOneSoliton,
                "closed one-soliton form needs a reduced spec with N=1");
  }
  const KernelPair kp = eval_kernels(spec, x, t, tol);
  const Complex k = spec.poles_k[0];
  const Complex kb = std::conj(k);
  const Complex g = kp.g[0];
  const double sigma = spec.sigma;
  const double g2 = std::norm(g);

  OneSolitonForms out{};
  const Complex bracket =
      1.0 + 2.0 * sigma * kb * g2 / ((kb - k) * (kb - k) * (kb + k));
  out.direct.u = -kI * g / bracket;
  out.direct.v = -2.0 * sigma * g2 / (kb + k) / std::norm(bracket);
  out.direct.w = sigma * std::conj(out.direct.u);

  const double modk = std::abs(k);
  const Complex e2 = -2.0 * g2 * modk / ((kb - k) * (kb - k) * (kb + k));
  out.exp_minus_2theta = e2.real();
  out.theta = -0.5 * std::log(out.exp_minus_2theta);
  out.D = std::exp(2.0 * out.theta) + std::exp(-2.0 * out.theta) -
          sigma * (kb + k).real() / modk;
  out.alpha = (-(kb - k) * (kb - k)).real() / modk;

  const double xi = k.real();
  const double eta = k.imag();
  const double z = eta * x - 2.0 * xi * eta * t + spec.z0[0];
  const double phi = xi * x - (xi * xi - eta * eta) * t + spec.phi0[0];
  const Complex numer = std::polar(std::exp(2.0 * out.theta - z), phi) -
                        sigma * std::polar(std::exp(-z), phi + std::arg(k));
  out.theta_form.u = -kI / out.D * numer;
  out.theta_form.v = -sigma * out.alpha / out.D;
  out.theta_form.w = sigma * std::conj(out.theta_form.u);

  if (ledger) {
    const double disc = rel_diff(out.theta_form, out.direct);
    ledger->observe(ExpansionForm::one_soliton_theta_form, disc, disc);
  }
  return out;
}

TwoSolitonForms two_soliton_closed(const SolitonSpec& spec,
                                   const KernelPair& kp, ErratumLedger* ledger,
                                   const Tolerances& tol) {
  if (!spec.reduced || spec.size() != 2) {
    throw Error(ErrorCode::NotTwoSoliton,
                "closed two-soliton form needs a reduced spec with N=2");
  }
  const double s = spec.sigma;
  const Complex k1 = spec.poles_k[0], k2 = spec.poles_k[1];
  const Complex kb1 = std::conj(k1), kb2 = std::conj(k2);
  const Complex g1 = kp.g[0], g2 = kp.g[1];
  const Complex gb1 = std::conj(g1), gb2 = std::conj(g2);
  const double a1 = std::norm(g1), a2 = std::norm(g2);

  auto pair = [](Complex p, Complex q) { return (p * p - q * q) * (p - q); };

  TwoSolitonForms out{};
  out.T = pair(kb1, k1) * pair(kb1, k2) * pair(kb2, k1) * pair(kb2, k2);
  const Complex cross = pair(kb1, kb2) * pair(k1, k2);

  out.D = 1.0 + 2.0 * s * kb1 * a1 / pair(kb1, k1) +
          2.0 * s * kb1 * gb1 * g2 / pair(kb1, k2) +
          2.0 * s * kb2 * g1 * gb2 / pair(kb2, k1) +
          2.0 * s * kb2 * a2 / pair(kb2, k2) +
          4.0 * a1 * a2 * kb1 * kb2 * cross / out.T;

  out.Omega = g1 + g2 +
              2.0 * s * g1 * g2 * pair(k2, k1) *
                  (kb1 * gb1 / (pair(kb1, k1) * pair(kb1, k2)) +
                   kb2 * gb2 / (pair(kb2, k1) * pair(kb2, k2)));

  const Complex quadratic = 2.0 * s * kb1 * a1 / (k1 * k1 - kb1 * kb1) +
                            2.0 * s * kb1 * g2 * gb1 / (k2 * k2 - kb1 * kb1) +
                            2.0 * s * kb2 * g1 * gb2 / (k1 * k1 - kb2 * kb2) +
                            2.0 * s * kb2 * a2 / (k2 * k2 - kb2 * kb2);
  const Complex quartic =
      4.0 * kb1 * kb2 * a1 * a2 * cross * (kb1 + kb2 - k1 - k2) / out.T;
  out.Omega1_literal = quadratic + quartic;
  out.Omega1 = quadratic - quartic;

  out.fields.u = -kI * out.Omega / out.D;
  out.fields.v = 2.0 * (out.Omega1 / out.D).real();
  out.fields.w = s * std::conj(out.fields.u);

  if (ledger) {
    const DetParts lu = lu_det_parts(spec, kp, tol);
    const double d_disc = rel_diff(out.D, lu.Dt);
    ledger->observe(ExpansionForm::two_soliton_denominator, d_disc, d_disc);
    const double u_disc = rel_diff(out.Omega, lu.Omt);
    ledger->observe(ExpansionForm::two_soliton_u_numerator, u_disc, u_disc);

    const FieldSample lin = fields_linear(spec, kp, tol);
    const Complex v_literal = 2.0 * (out.Omega1_literal / out.D).real();
    ledger->observe(ExpansionForm::two_soliton_v_numerator,
                    std::max(rel_diff(out.Omega1_literal, lu.Om1),
                             rel_diff(v_literal, lin.v)),
                    std::max(rel_diff(out.Omega1, lu.Om1),
                             rel_diff(out.fields.v, lin.v)));
  }
  return out;
}

TwoSolitonForms two_soliton_closed(const SolitonSpec& spec, double x, double t,
                                   ErratumLedger* ledger,
                                   const Tolerances& tol) {
  if (!spec.reduced || spec.size() != 2) {
    throw Error(ErrorCode::NotTwoSoliton,
                "closed two-soliton form needs a reduced spec with N=2");
  }
  return two_soliton_closed(spec, eval_kernels(spec, x, t, tol), ledger, tol);
}

FieldSample fields_binet(const SolitonSpec& spec, const KernelPair& kp,
                         const Tolerances& tol) {
  if (spec.size() == 0) return {};
  return fields_from_parts(spec, cauchy_binet_parts(spec, kp, nullptr, tol));
}

FieldSample evaluate(Route route, const SolitonSpec& spec, double x, double t,
                     const Tolerances& tol) {
  switch (route) {
    case Route::linear: return fields_linear(spec, x, t, tol);
    case Route::determinant: return fields_determinant(spec, x, t, tol);
    case Route::binet:
      return fields_binet(spec, eval_kernels(spec, x, t, tol), tol);
    case Route::closed:
      if (spec.reduced && spec.size() == 1) {
        return one_soliton_closed(spec, x, t, nullptr, tol).direct;
      }
      if (spec.reduced && spec.size() == 2) {
        return two_soliton_closed(spec, x, t, nullptr, tol).fields;
      }
      throw Error(ErrorCode::ConfigError,
                  "route 'closed' requires a reduced spec with N in {1,2}");
  }
  return {};
}

}  // namespace lsw
