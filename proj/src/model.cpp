#include "lsw/model.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace lsw {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicatePole: return "DuplicatePole";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::BadSigma: return "BadSigma";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BadReducedPole: return "BadReducedPole";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
    case ErrorCode::NearSingularSystem: return "NearSingularSystem";
    case ErrorCode::NotOneSoliton: return "NotOneSoliton";
    case ErrorCode::NotTwoSoliton: return "NotTwoSoliton";
    case ErrorCode::TooManySolitons: return "TooManySolitons";
    case ErrorCode::EvalOnSupport: return "EvalOnSupport";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

SolitonSpec SolitonSpec::make_reduced(int sigma, std::vector<Complex> k,
                                      std::vector<double> z0,
                                      std::vector<double> phi0) {
  SolitonSpec s;
  s.sigma = sigma;
  s.reduced = true;
  const auto n = k.size();
  s.poles_l.reserve(n);
  for (const auto& kj : k) s.poles_l.push_back(std::conj(kj));
  s.poles_k = std::move(k);
  s.z0 = z0.empty() ? std::vector<double>(n, 0.0) : std::move(z0);
  s.phi0 = phi0.empty() ? std::vector<double>(n, 0.0) : std::move(phi0);
  return s;
}

SolitonSpec SolitonSpec::make_general(std::vector<Complex> k,
                                      std::vector<Complex> l,
                                      std::vector<Complex> xi,
                                      std::vector<Complex> eta) {
  SolitonSpec s;
  s.reduced = false;
  s.sigma = 1;
  const auto n = k.size();
  s.poles_k = std::move(k);
  s.poles_l = std::move(l);
  s.phase_xi = xi.empty() ? std::vector<Complex>(n) : std::move(xi);
  s.phase_eta = eta.empty() ? std::vector<Complex>(n) : std::move(eta);
  return s;
}

namespace {

std::string join(const std::vector<Violation>& vs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) os << "; ";
    os << to_string(vs[i].code) << " (" << vs[i].message << ")";
  }
  return os.str();
}

ErrorCode first_code(const std::vector<Violation>& vs) {
  return vs.empty() ? ErrorCode::ConfigError : vs.front().code;
}

std::string fmt_c(Complex z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

SpecError::SpecError(std::vector<Violation> violations)
    : Error(first_code(violations), join(violations)),
      violations_(std::move(violations)) {}

std::vector<Violation> check_spec(const SolitonSpec& spec,
                                  const Tolerances& tol) {
  std::vector<Violation> out;
  const auto n = spec.size();
  const double floor = tol.min_denominator;

  if (spec.sigma != 1 && spec.sigma != -1) {
    out.push_back({ErrorCode::BadSigma,
                   "sigma must be +1 or -1, got " + std::to_string(spec.sigma)});
  }

  auto need = [&](std::size_t got, const char* what) {
    if (got != n) {
      out.push_back({ErrorCode::ShapeMismatch,
                     std::string(what) + " has " + std::to_string(got) +
                         " entries, expected " + std::to_string(n)});
      return false;
    }
    return true;
  };

  bool shapes_ok = true;
  if (spec.reduced) {
    shapes_ok &= need(spec.z0.size(), "z0");
    shapes_ok &= need(spec.phi0.size(), "phi0");
    for (std::size_t j = 0; j < n; ++j) {
      const auto kj = spec.poles_k[j];
      if (!(kj.real() > 0.0) || !(kj.imag() > 0.0)) {
        out.push_back({ErrorCode::BadReducedPole,
                       "k_" + std::to_string(j + 1) + " = " + fmt_c(kj) +
                           " must have positive real and imaginary parts"});
      }
    }
  } else {
    shapes_ok &= need(spec.poles_l.size(), "poles_l");
    shapes_ok &= need(spec.phase_xi.size(), "phase_xi");
    shapes_ok &= need(spec.phase_eta.size(), "phase_eta");
  }
  if (!shapes_ok) return out;

  const CVector k = poles_k_of(spec);
  const CVector l = poles_l_of(spec);

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (std::abs(k[a] - k[b]) < floor) {
        out.push_back({ErrorCode::DuplicatePole,
                       "k_" + std::to_string(a + 1) + " and k_" +
                           std::to_string(b + 1) + " coincide at " + fmt_c(k[a])});
      }
      // In the reduced flavor l duplicates are implied by k duplicates.
      if (!spec.reduced && std::abs(l[a] - l[b]) < floor) {
        out.push_back({ErrorCode::DuplicatePole,
                       "l_" + std::to_string(a + 1) + " and l_" +
                           std::to_string(b + 1) + " coincide at " + fmt_c(l[a])});
      }
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto tag = std::to_string(a + 1) + "," + std::to_string(b + 1);
      if (std::abs(k[a] - l[b]) < floor) {
        out.push_back({ErrorCode::SingularDenominator,
                       "|k_n - l_m| below floor at (n,m)=(" + tag + ")"});
      }
      if (std::abs(k[a] + l[b]) < floor) {
        out.push_back({ErrorCode::SingularDenominator,
                       "|k_n + l_m| below floor at (n,m)=(" + tag + ")"});
      }
    }
  }
  return out;
}

const SolitonSpec& validate_spec(const SolitonSpec& spec,
                                 const Tolerances& tol) {
  auto violations = check_spec(spec, tol);
  if (!violations.empty()) throw SpecError(std::move(violations));
  return spec;
}

CVector poles_k_of(const SolitonSpec& spec) {
  CVector k(static_cast<Eigen::Index>(spec.size()));
  for (std::size_t j = 0; j < spec.size(); ++j) k[j] = spec.poles_k[j];
  return k;
}

CVector poles_l_of(const SolitonSpec& spec) {
  CVector l(static_cast<Eigen::Index>(spec.size()));
  for (std::size_t j = 0; j < spec.size(); ++j) {
    l[j] = spec.reduced ? std::conj(spec.poles_k[j]) : spec.poles_l[j];
  }
  return l;
}

KernelPair eval_kernels(const SolitonSpec& spec, double x, double t,
                        const Tolerances& tol) {
  const auto n = static_cast<Eigen::Index>(spec.size());
  KernelPair kp{CVector(n), CVector(n)};

  auto overflow = [&](std::size_t j, double e) {
    std::ostringstream os;
    os << "kernel exponent " << e << " of mode " << j + 1 << " at (x,t)=("
       << x << "," << t << ") exceeds cap " << tol.exponent_cap;
    return Error(ErrorCode::ExponentOverflow, os.str());
  };

  for (std::size_t j = 0; j < spec.size(); ++j) {
    if (spec.reduced) {
      const double xi = spec.poles_k[j].real();
      const double eta = spec.poles_k[j].imag();
      const double z = eta * x - 2.0 * xi * eta * t + spec.z0[j];
      const double phi = xi * x - (xi * xi - eta * eta) * t + spec.phi0[j];
      if (std::abs(z) > tol.exponent_cap) throw overflow(j, z);
      const Complex g = std::polar(std::exp(-z), phi);
      kp.g[j] = g;
      kp.h[j] = static_cast<double>(spec.sigma) * std::conj(g);
    } else {
      const Complex k = spec.poles_k[j];
      const Complex l = spec.poles_l[j];
      const Complex arg_g = k * x - k * k * t + spec.phase_xi[j];
      const Complex arg_h = l * x - l * l * t + spec.phase_eta[j];
      if (std::abs(arg_g.imag()) > tol.exponent_cap) throw overflow(j, arg_g.imag());
      if (std::abs(arg_h.imag()) > tol.exponent_cap) throw overflow(j, arg_h.imag());
      kp.g[j] = std::exp(kI * arg_g);
      kp.h[j] = std::exp(-kI * arg_h);
    }
  }
  return kp;
}

}  // namespace lsw
