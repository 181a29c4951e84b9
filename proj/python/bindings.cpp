#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lsw/commands.hpp"
#include "lsw/config.hpp"
#include "lsw/lax.hpp"
#include "lsw/solvers.hpp"
#include "lsw/verify.hpp"

namespace py = pybind11;

namespace {

py::dict field_dict(const lsw::FieldSample& f) {
  py::dict d;
  d["u"] = f.u;
  d["v"] = f.v;
  d["w"] = f.w;
  return d;
}

py::dict sample_grid(const lsw::SolitonSpec& spec, const lsw::GridSpec& grid,
                     const std::string& route) {
  lsw::validate_spec(spec);
  const lsw::FieldGrid fg = lsw::sample_fields(spec, grid, lsw::route_from_string(route));
  const auto nt = static_cast<py::ssize_t>(grid.nt), nx = static_cast<py::ssize_t>(grid.nx);
  py::array_t<std::complex<double>> u({nt, nx}), v({nt, nx}), w({nt, nx});
  py::array_t<double> det({nt, nx});
  py::array_t<bool> masked({nt, nx});
  auto pu = u.mutable_unchecked<2>(), pv = v.mutable_unchecked<2>(), pw = w.mutable_unchecked<2>();
  auto pd = det.mutable_unchecked<2>();
  auto pm = masked.mutable_unchecked<2>();
  for (py::ssize_t j = 0; j < nt; ++j) {
    for (py::ssize_t i = 0; i < nx; ++i) {
      const std::size_t p = fg.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      pu(j, i) = fg.fields[p].u;
      pv(j, i) = fg.fields[p].v;
      pw(j, i) = fg.fields[p].w;
      pd(j, i) = fg.abs_det[p];
      pm(j, i) = fg.masked[p] != 0;
    }
  }
  py::array_t<double> x(nx), t(nt);
  for (py::ssize_t i = 0; i < nx; ++i) x.mutable_at(i) = grid.x(static_cast<std::size_t>(i));
  for (py::ssize_t j = 0; j < nt; ++j) t.mutable_at(j) = grid.t(static_cast<std::size_t>(j));
  py::dict d;
  d["x"] = x;
  d["t"] = t;
  d["u"] = u;
  d["v"] = v;
  d["w"] = w;
  d["abs_det"] = det;
  d["masked"] = masked;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dressed N-soliton solutions of the long-short wave system";

  static py::exception<lsw::Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const lsw::Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<lsw::SolitonSpec>(m, "SolitonSpec")
      .def_static("reduced", &lsw::SolitonSpec::make_reduced, py::arg("sigma"), py::arg("poles"),
                  py::arg("z0") = std::vector<double>{}, py::arg("phi0") = std::vector<double>{})
      .def_static("general", &lsw::SolitonSpec::make_general, py::arg("poles_k"),
                  py::arg("poles_l"), py::arg("phase_xi") = std::vector<lsw::Complex>{},
                  py::arg("phase_eta") = std::vector<lsw::Complex>{})
      .def_readonly("sigma", &lsw::SolitonSpec::sigma)
      .def_readonly("is_reduced", &lsw::SolitonSpec::reduced)
      .def_readonly("poles_k", &lsw::SolitonSpec::poles_k)
      .def_readonly("poles_l", &lsw::SolitonSpec::poles_l)
      .def("__len__", &lsw::SolitonSpec::size);

  py::class_<lsw::GridSpec>(m, "Grid")
      .def(py::init([](double x_min, double x_max, double t_min, double t_max, std::size_t nx,
                       std::size_t nt) {
             lsw::GridSpec g{x_min, x_max, t_min, t_max, nx, nt};
             lsw::validate_grid(g);
             return g;
           }),
           py::arg("x_min") = -8.0, py::arg("x_max") = 8.0, py::arg("t_min") = -3.0,
           py::arg("t_max") = 3.0, py::arg("nx") = 161, py::arg("nt") = 61)
      .def_readonly("nx", &lsw::GridSpec::nx)
      .def_readonly("nt", &lsw::GridSpec::nt);

  m.def("check_spec", [](const lsw::SolitonSpec& s) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& v : lsw::check_spec(s)) out.emplace_back(std::string(lsw::to_string(v.code)), v.message);
    return out;
  }, "List of (code, message) for every violated invariant.");

  m.def("figure_spec", [](int figure) { return lsw::figure_preset(figure).spec; }, py::arg("figure"));

  m.def("fields", [](const lsw::SolitonSpec& s, double x, double t, const std::string& route) {
    lsw::validate_spec(s);
    return field_dict(lsw::evaluate(lsw::route_from_string(route), s, x, t));
  }, py::arg("spec"), py::arg("x"), py::arg("t"), py::arg("route") = "linear");

  m.def("sample", &sample_grid, py::arg("spec"), py::arg("grid") = lsw::GridSpec{},
        py::arg("route") = "linear", "Fields on a (t, x) grid as arrays of shape (nt, nx).");

  m.def("q_matrix", [](const lsw::SolitonSpec& s, double x, double t) {
    lsw::validate_spec(s);
    return lsw::Matrix3c(lsw::q_from_psi(s, x, t));
  }, py::arg("spec"), py::arg("x"), py::arg("t"));

  m.def("lax_x_residual", [](const lsw::SolitonSpec& s, double x, double t, lsw::Complex k, double h) {
    lsw::validate_spec(s);
    return lsw::lax_x_residual(s, x, t, k, h);
  }, py::arg("spec"), py::arg("x"), py::arg("t"), py::arg("k"), py::arg("step"));

  m.def("verify_json", [](const std::string& config, bool ledger) {
    const lsw::RunConfig cfg = lsw::parse_config(config);
    py::gil_scoped_release release;
    return lsw::run_verification(cfg).to_json(cfg, ledger).dump();
  }, py::arg("config"), py::arg("ledger") = false, "Runs every verification suite; returns JSON text.");

  m.def("peak_json", [](const std::string& config) {
    const lsw::RunConfig cfg = lsw::parse_config(config);
    return lsw::peak_to_json(cfg, lsw::run_peak(cfg)).dump();
  }, py::arg("config"));
}
