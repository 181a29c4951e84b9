// lswdress: sample, verify and summarise dressed soliton solutions.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lsw/commands.hpp"
#include "lsw/config.hpp"

namespace {

struct Options {
  std::string config_path;
  std::optional<int> figure;
  std::optional<std::string> route;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::string ledger_path;
  bool ledger = false;
};

lsw::RunConfig resolve(const Options& o) {
  lsw::RunConfig cfg;
  if (!o.config_path.empty()) {
    cfg = lsw::load_config(o.config_path);
    if (o.figure) {
      throw lsw::Error(lsw::ErrorCode::ConfigError,
                       "--figure and --config are exclusive; put \"figure\" in the config instead");
    }
  } else if (o.figure) {
    cfg = lsw::figure_preset(*o.figure);
  } else {
    throw lsw::Error(lsw::ErrorCode::ConfigError, "one of --config or --figure is required");
  }
  if (o.route) cfg.route = lsw::route_from_string(*o.route);
  if (o.format) cfg.format = lsw::format_from_string(*o.format);
  if (o.out) cfg.out_path = *o.out;
  return cfg;
}

/// Runs `write` against the configured output, stdout when no path is set.
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw lsw::Error(lsw::ErrorCode::IoError, "cannot open " + path + " for writing");
  write(out);
  out.flush();
  if (!out) throw lsw::Error(lsw::ErrorCode::IoError, "write to " + path + " failed");
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("-c,--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--figure", o.figure, "preset parameter set (1-4)")->check(CLI::Range(1, 4));
  cmd->add_option("--route", o.route, "linear|determinant|closed|binet");
  cmd->add_option("-o,--out", o.out, "output file (default: stdout)");
  cmd->add_option("--format", o.format, "csv|json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact N-soliton solutions of the long-short wave system"};
  app.require_subcommand(1);
  Options o;

  auto* sample = app.add_subcommand("sample", "write fields on the configured grid");
  add_common(sample, o);
  auto* verify = app.add_subcommand("verify", "run the verification suites");
  add_common(verify, o);
  verify->add_option("--erratum-ledger", o.ledger_path,
                     "dump expansion mismatches (to a file, or into the report)")
      ->expected(0, 1);
  auto* peak = app.add_subcommand("peak", "per-slice peak statistics and determinant minima");
  add_common(peak, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lsw::kExitConfigError;
  }
  o.ledger = verify->count("--erratum-ledger") > 0;

  try {
    const lsw::RunConfig cfg = resolve(o);
    if (*sample) {
      emit(cfg.out_path, [&](std::ostream& out) { lsw::cmd_sample(cfg, out); });
      return lsw::kExitPass;
    }
    if (*verify) {
      const lsw::VerifyResult r = lsw::run_verification(cfg);
      const bool inline_ledger = o.ledger && o.ledger_path.empty();
      emit(cfg.out_path, [&](std::ostream& out) {
        out << r.to_json(cfg, inline_ledger).dump(1) << '\n';
      });
      if (o.ledger && !o.ledger_path.empty()) {
        emit(o.ledger_path, [&](std::ostream& out) { out << r.ledger.to_json().dump(1) << '\n'; });
      }
      for (const auto& s : r.suites) {
        std::cerr << (s.passed ? "pass " : "FAIL ") << s.name << '\n';
      }
      return r.passed ? lsw::kExitPass : lsw::kExitVerifyFailed;
    }
    const lsw::PeakReport r = lsw::run_peak(cfg);
    emit(cfg.out_path, [&](std::ostream& out) {
      if (cfg.format == lsw::OutputFormat::csv) {
        lsw::write_peak_csv(r, out);
      } else {
        out << lsw::peak_to_json(cfg, r).dump(1) << '\n';
      }
    });
    if (cfg.format == lsw::OutputFormat::csv) {
      std::cerr << "velocity " << lsw::format_double(r.peaks.velocity) << '\n';
    }
    return lsw::kExitPass;
  } catch (const lsw::SpecError& e) {
    const nlohmann::json j = {{"passed", false},
                              {"error", "invalid spec"},
                              {"violations", lsw::violations_to_json(e.violations())}};
    std::cout << j.dump(1) << '\n';
    std::cerr << "lswdress: " << e.what() << '\n';
    return lsw::kExitConfigError;
  } catch (const lsw::Error& e) {
    std::cerr << "lswdress: " << e.what() << '\n';
    return lsw::kExitConfigError;
  }
}
