#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lsw/config.hpp"
#include "lsw/erratum.hpp"
#include "lsw/verify.hpp"

namespace lsw {

/// Exit statuses of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Formats with 17 significant digits, the shortest width that round-trips
/// every double.
std::string format_double(double v);

/// Header `x,t,re_u,im_u,abs_u,v,re_w,im_w,abs_det,masked`, one LF-terminated
/// row per grid point ordered by (t, x). The `v` column is Re v.
void write_fields_csv(const FieldGrid& fields, std::ostream& out);

/// Same table with complex v kept whole, plus the config echo.
nlohmann::json fields_to_json(const RunConfig& cfg, const FieldGrid& fields);

/// Samples the configured grid and writes it in the configured format.
void cmd_sample(const RunConfig& cfg, std::ostream& out);

struct SuiteResult {
  explicit SuiteResult(std::string suite) : name(std::move(suite)) {}

  std::string name;
  bool passed = true;
  nlohmann::json metrics = nlohmann::json::object();
  std::vector<std::string> failures;

  void fail(std::string why) {
    passed = false;
    failures.push_back(std::move(why));
  }
};

struct VerifyResult {
  bool passed = true;
  std::vector<SuiteResult> suites;
  ErratumLedger ledger;

  nlohmann::json to_json(const RunConfig& cfg, bool with_ledger) const;
};

/// Route equivalence, determinant identities, reduction invariants, PDE
/// residual convergence, Lax x-residual and symmetries, expansion ledger.
/// Throws SpecError before any suite runs when the spec is invalid.
VerifyResult run_verification(const RunConfig& cfg);

struct PeakReport {
  PeakStatistics peaks;
  SingularityScan scan;
};

PeakReport run_peak(const RunConfig& cfg);
nlohmann::json peak_to_json(const RunConfig& cfg, const PeakReport& report);
/// Columns `t,x_peak,max_abs_u,min_abs_det,interior`.
void write_peak_csv(const PeakReport& report, std::ostream& out);

/// Machine-readable form of a validation failure.
nlohmann::json violations_to_json(const std::vector<Violation>& violations);

}  // namespace lsw
