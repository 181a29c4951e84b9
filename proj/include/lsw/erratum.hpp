#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lsw {

/// Literal forms of the closed-form expansions that are checked against
/// the LU oracle. Each literal form has a corrected counterpart.
enum class ExpansionForm {
  det_expansion,            ///< Cauchy-Binet sum for det(I + Mt)
  u_numerator_expansion,    ///< bordered sum for det(I + Mt + g^T E) - det(I + Mt)
  v_numerator_expansion,    ///< bordered sum for det(I + M + h^T(calG - calGt)) - det(I + M)
  two_soliton_denominator,  ///< explicit N=2 det(I + Mt)
  two_soliton_u_numerator,  ///< explicit N=2 u numerator
  two_soliton_v_numerator,  ///< explicit N=2 v numerator
  one_soliton_theta_form,   ///< hyperbolic (theta, D, alpha) one-soliton form
};

std::string to_string(ExpansionForm form);

struct ErratumEntry {
  ExpansionForm form;
  std::string literal;    ///< the literal prefactor/structure
  std::string corrected;  ///< the correction that restores agreement
  double max_rel_literal = 0.0;
  double max_rel_corrected = 0.0;
  std::size_t samples = 0;

  /// The correction brings the form back within the agreement tolerance.
  bool restored(double tol) const noexcept { return max_rel_corrected <= tol; }
};

/// Append-only record of measured disagreements between literal closed
/// forms and the LU oracle. Observations below `threshold` on both the
/// literal and the corrected side are not recorded.
class ErratumLedger {
 public:
  explicit ErratumLedger(double threshold = 1e-9) : threshold_(threshold) {}

  void observe(ExpansionForm form, double rel_literal, double rel_corrected);

  /// Combines per-worker ledgers after a sweep; order-insensitive.
  void merge(const ErratumLedger& other);

  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<ErratumEntry>& entries() const noexcept { return entries_; }
  const ErratumEntry* find(ExpansionForm form) const noexcept;
  double threshold() const noexcept { return threshold_; }

  /// True when every recorded entry is restored by its correction.
  bool all_restored() const noexcept;

  nlohmann::json to_json() const;

 private:
  ErratumEntry& slot(ExpansionForm form);

  double threshold_;
  std::vector<ErratumEntry> entries_;
};

}  // namespace lsw
