#include "lsw/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace lsw {

using nlohmann::json;

std::string_view to_string(OutputFormat f) noexcept {
  return f == OutputFormat::json ? "json" : "csv";
}

OutputFormat format_from_string(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw Error(ErrorCode::ConfigError,
              "unknown format '" + std::string(name) + "' (expected csv|json)");
}

RunConfig figure_preset(int figure) {
  RunConfig cfg;
  cfg.figure = figure;
  switch (figure) {
    case 1: cfg.spec = SolitonSpec::make_reduced(-1, {{1.04, 0.6}}); break;
    case 2: cfg.spec = SolitonSpec::make_reduced(+1, {{1.04, 0.6}}); break;
    case 3: cfg.spec = SolitonSpec::make_reduced(-1, {{1.04, 0.6}, {2.0, 0.4}}); break;
    case 4: cfg.spec = SolitonSpec::make_reduced(+1, {{1.04, 0.6}, {2.0, 0.4}}); break;
    default:
      throw Error(ErrorCode::ConfigError,
                  "figure must be 1, 2, 3 or 4, got " + std::to_string(figure));
  }
  return cfg;
}

namespace {

[[noreturn]] void field_error(const std::string& source, const std::string& path,
                              const std::string& what) {
  throw Error(ErrorCode::ConfigError, source + ": field " + path + ": " + what);
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  double number(const json& j, const std::string& path) const {
    if (!j.is_number()) field_error(source_, path, "expected a number, got " + std::string(j.type_name()));
    return j.get<double>();
  }

  std::size_t count(const json& j, const std::string& path) const {
    if (!j.is_number_integer() || j.get<long long>() < 1) {
      field_error(source_, path, "expected a positive integer");
    }
    return j.get<std::size_t>();
  }

  Complex complex(const json& j, const std::string& path) const {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) field_error(source_, path, "expected [re, im]");
    return {number(j[0], path + "/0"), number(j[1], path + "/1")};
  }

  std::vector<Complex> complex_list(const json& j, const std::string& path) const {
    if (!j.is_array()) field_error(source_, path, "expected a list of [re, im] pairs");
    std::vector<Complex> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(complex(j[i], path + "/" + std::to_string(i)));
    }
    return out;
  }

  std::vector<double> real_list(const json& j, const std::string& path) const {
    if (!j.is_array()) field_error(source_, path, "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(number(j[i], path + "/" + std::to_string(i)));
    }
    return out;
  }

  std::string string(const json& j, const std::string& path) const {
    if (!j.is_string()) field_error(source_, path, "expected a string");
    return j.get<std::string>();
  }

  void known_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& keys) const {
    for (const auto& [key, value] : obj.items()) {
      if (!keys.count(key)) field_error(source_, path + "/" + key, "unknown key");
    }
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json complex_list_json(const std::vector<Complex>& v) {
  json a = json::array();
  for (const Complex& c : v) a.push_back(complex_json(c));
  return a;
}

}  // namespace

RunConfig parse_config(std::string_view text, std::string_view source_name) {
  const std::string source(source_name);
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending token.
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": syntax error: " << e.what();
    throw Error(ErrorCode::ConfigError, os.str());
  }
  if (!root.is_object()) field_error(source, "/", "top level must be an object");

  const Reader rd(source);
  rd.known_keys(root, "",
                {"figure", "sigma", "reduced", "poles", "poles_l", "phase_xi",
                 "phase_eta", "z0", "phi0", "grid", "route", "format", "out",
                 "mask_threshold", "fd_step"});

  RunConfig cfg;
  if (root.contains("figure")) {
    const json& f = root["figure"];
    if (!f.is_number_integer()) field_error(source, "/figure", "expected 1, 2, 3 or 4");
    cfg = figure_preset(f.get<int>());
  }

  SolitonSpec& s = cfg.spec;
  if (root.contains("reduced")) {
    if (!root["reduced"].is_boolean()) field_error(source, "/reduced", "expected true or false");
    s.reduced = root["reduced"].get<bool>();
  }
  if (root.contains("sigma")) {
    const json& j = root["sigma"];
    if (!j.is_number_integer()) field_error(source, "/sigma", "expected +1 or -1");
    s.sigma = j.get<int>();
  }
  if (root.contains("poles")) {
    s.poles_k = rd.complex_list(root["poles"], "/poles");
    if (!root.contains("z0")) s.z0.clear();
    if (!root.contains("phi0")) s.phi0.clear();
    if (!root.contains("phase_xi")) s.phase_xi.clear();
    if (!root.contains("phase_eta")) s.phase_eta.clear();
    if (!root.contains("poles_l")) s.poles_l.clear();
  }
  if (root.contains("poles_l")) s.poles_l = rd.complex_list(root["poles_l"], "/poles_l");
  if (root.contains("phase_xi")) s.phase_xi = rd.complex_list(root["phase_xi"], "/phase_xi");
  if (root.contains("phase_eta")) s.phase_eta = rd.complex_list(root["phase_eta"], "/phase_eta");
  if (root.contains("z0")) s.z0 = rd.real_list(root["z0"], "/z0");
  if (root.contains("phi0")) s.phi0 = rd.real_list(root["phi0"], "/phi0");

  // Missing offsets default to zero; a wrong length is a validation error.
  const std::size_t n = s.size();
  if (s.reduced) {
    s.poles_l.clear();
    for (const Complex& k : s.poles_k) s.poles_l.push_back(std::conj(k));
    if (s.z0.empty()) s.z0.assign(n, 0.0);
    if (s.phi0.empty()) s.phi0.assign(n, 0.0);
  } else {
    if (s.phase_xi.empty()) s.phase_xi.assign(n, 0.0);
    if (s.phase_eta.empty()) s.phase_eta.assign(n, 0.0);
  }

  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (!g.is_object()) field_error(source, "/grid", "expected an object");
    rd.known_keys(g, "/grid", {"x_min", "x_max", "t_min", "t_max", "nx", "nt"});
    if (g.contains("x_min")) cfg.grid.x_min = rd.number(g["x_min"], "/grid/x_min");
    if (g.contains("x_max")) cfg.grid.x_max = rd.number(g["x_max"], "/grid/x_max");
    if (g.contains("t_min")) cfg.grid.t_min = rd.number(g["t_min"], "/grid/t_min");
    if (g.contains("t_max")) cfg.grid.t_max = rd.number(g["t_max"], "/grid/t_max");
    if (g.contains("nx")) cfg.grid.nx = rd.count(g["nx"], "/grid/nx");
    if (g.contains("nt")) cfg.grid.nt = rd.count(g["nt"], "/grid/nt");
  }
  if (root.contains("route")) {
    try {
      cfg.route = route_from_string(rd.string(root["route"], "/route"));
    } catch (const Error& e) {
      field_error(source, "/route", e.what());
    }
  }
  if (root.contains("format")) {
    try {
      cfg.format = format_from_string(rd.string(root["format"], "/format"));
    } catch (const Error& e) {
      field_error(source, "/format", e.what());
    }
  }
  if (root.contains("out")) cfg.out_path = rd.string(root["out"], "/out");
  if (root.contains("mask_threshold")) {
    const double m = rd.number(root["mask_threshold"], "/mask_threshold");
    if (!(m >= 0.0)) field_error(source, "/mask_threshold", "must be non-negative");
    cfg.mask.absolute = m;
  }
  if (root.contains("fd_step")) {
    cfg.fd_step = rd.number(root["fd_step"], "/fd_step");
    if (!(cfg.fd_step > 0.0)) field_error(source, "/fd_step", "must be positive");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

void check_route(const RunConfig& cfg) {
  const SolitonSpec& s = cfg.spec;
  if (cfg.route == Route::closed && !(s.reduced && (s.size() == 1 || s.size() == 2))) {
    throw Error(ErrorCode::ConfigError,
                "route 'closed' requires a reduced spec with N in {1,2}, got N=" +
                    std::to_string(s.size()) + (s.reduced ? "" : " (general)"));
  }
  if (cfg.route == Route::binet && s.size() > kMaxBinetSolitons) {
    throw Error(ErrorCode::TooManySolitons,
                "route 'binet' is limited to N <= 8, got N=" + std::to_string(s.size()));
  }
}

json config_to_json(const RunConfig& cfg) {
  const SolitonSpec& s = cfg.spec;
  json j;
  if (cfg.figure) j["figure"] = *cfg.figure;
  j["sigma"] = s.sigma;
  j["reduced"] = s.reduced;
  j["poles"] = complex_list_json(s.poles_k);
  if (s.reduced) {
    j["z0"] = s.z0;
    j["phi0"] = s.phi0;
  } else {
    j["poles_l"] = complex_list_json(s.poles_l);
    j["phase_xi"] = complex_list_json(s.phase_xi);
    j["phase_eta"] = complex_list_json(s.phase_eta);
  }
  j["grid"] = {{"x_min", cfg.grid.x_min}, {"x_max", cfg.grid.x_max},
               {"t_min", cfg.grid.t_min}, {"t_max", cfg.grid.t_max},
               {"nx", cfg.grid.nx},       {"nt", cfg.grid.nt}};
  j["route"] = std::string(to_string(cfg.route));
  j["format"] = std::string(to_string(cfg.format));
  if (cfg.mask.absolute) j["mask_threshold"] = *cfg.mask.absolute;
  j["fd_step"] = cfg.fd_step;
  return j;
}

}  // namespace lsw
