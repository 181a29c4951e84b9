#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "lsw/common.hpp"
#include "lsw/model.hpp"
#include "lsw/solvers.hpp"
#include "lsw/verify.hpp"

namespace lsw {

enum class OutputFormat { csv, json };

std::string_view to_string(OutputFormat f) noexcept;
OutputFormat format_from_string(std::string_view name);

struct RunConfig {
  SolitonSpec spec;
  GridSpec grid;
  Route route = Route::linear;
  OutputFormat format = OutputFormat::csv;
  std::string out_path;  ///< empty: standard output
  MaskPolicy mask;
  /// Largest step of the halving sequence used by the Lax x-residual.
  double fd_step = 1e-2;
  std::optional<int> figure;
  Tolerances tol;
};

/// The four preset parameter sets:
/// k1 = 1.04+0.6i, sigma = -1 (1) and +1 (2); k1 and k2 = 2+0.4i,
/// sigma = -1 (3) and +1 (4). All offsets zero.
RunConfig figure_preset(int figure);

/// Parses a JSON config. Keys: figure, sigma, reduced, poles, poles_l,
/// phase_xi, phase_eta, z0, phi0, grid{x_min,x_max,t_min,t_max,nx,nt},
/// route, format, out, mask_threshold, fd_step. Complex numbers are
/// [re, im] pairs. When `figure` is present the preset is loaded first and
/// the remaining keys override it.
///
/// Throws ConfigError naming the line/column of a syntax error or the
/// JSON path of a bad field.
RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Throws ConfigError when the route cannot serve the spec.
void check_route(const RunConfig& cfg);

nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace lsw
