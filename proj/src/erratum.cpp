#include "lsw/erratum.hpp"

#include <algorithm>

namespace lsw {

std::string to_string(ExpansionForm form) {
  switch (form) {
    case ExpansionForm::det_expansion: return "det_expansion";
    case ExpansionForm::u_numerator_expansion: return "u_numerator_expansion";
    case ExpansionForm::v_numerator_expansion: return "v_numerator_expansion";
    case ExpansionForm::two_soliton_denominator: return "two_soliton_denominator";
    case ExpansionForm::two_soliton_u_numerator: return "two_soliton_u_numerator";
    case ExpansionForm::two_soliton_v_numerator: return "two_soliton_v_numerator";
    case ExpansionForm::one_soliton_theta_form: return "one_soliton_theta_form";
  }
  return "unknown";
}

namespace {

struct FormText {
  const char* literal;
  const char* corrected;
};

FormText describe(ExpansionForm form) {
  switch (form) {
    case ExpansionForm::det_expansion:
      return {"prefactor (-2)^nu on each (J,R) term",
              "prefactor 2^nu (same product structure)"};
    case ExpansionForm::u_numerator_expansion:
      return {"prefactor (-2)^(nu-1) on each (J,R') term",
              "prefactor 2^(nu-1) (same product structure)"};
    case ExpansionForm::v_numerator_expansion:
      return {"prefactor (-1)^(nu-1) 2^nu; pair products over (R',J) only; "
              "sum over every n",
              "prefactor 2^nu; extra factor prod_{r in R'}(k_n^2-k_r^2) / "
              "prod_{j in J}(k_n^2-l_j^2); n ranges outside R'"};
    case ExpansionForm::two_soliton_denominator:
      return {"explicit N=2 denominator", "none known"};
    case ExpansionForm::two_soliton_u_numerator:
      return {"explicit N=2 u numerator", "none known"};
    case ExpansionForm::two_soliton_v_numerator:
      return {"quartic term 4 kb1 kb2 |g1|^2 |g2|^2 (...) / T with sign +",
              "quartic term with sign - (i.e. -4 kb1 kb2 |g1|^2 |g2|^2 (...) / T)"};
    case ExpansionForm::one_soliton_theta_form:
      return {"hyperbolic (theta, D, alpha) form", "none known"};
  }
  return {"", ""};
}

}  // namespace

ErratumEntry& ErratumLedger::slot(ExpansionForm form) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const ErratumEntry& e) { return e.form == form; });
  if (it != entries_.end()) return *it;
  const auto text = describe(form);
  entries_.push_back({form, text.literal, text.corrected, 0.0, 0.0, 0});
  return entries_.back();
}

void ErratumLedger::observe(ExpansionForm form, double rel_literal,
                            double rel_corrected) {
  // NaN compares false; treat it as a disagreement.
  const bool quiet = rel_literal <= threshold_ && rel_corrected <= threshold_;
  if (quiet) return;
  auto& e = slot(form);
  e.max_rel_literal = std::max(e.max_rel_literal, rel_literal);
  if (!(rel_literal == rel_literal)) e.max_rel_literal = rel_literal;
  e.max_rel_corrected = std::max(e.max_rel_corrected, rel_corrected);
  if (!(rel_corrected == rel_corrected)) e.max_rel_corrected = rel_corrected;
  ++e.samples;
}

void ErratumLedger::merge(const ErratumLedger& other) {
  for (const auto& o : other.entries_) {
    auto& e = slot(o.form);
    e.max_rel_literal = std::max(e.max_rel_literal, o.max_rel_literal);
    e.max_rel_corrected = std::max(e.max_rel_corrected, o.max_rel_corrected);
    e.samples += o.samples;
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const ErratumEntry& a, const ErratumEntry& b) {
              return static_cast<int>(a.form) < static_cast<int>(b.form);
            });
}

const ErratumEntry* ErratumLedger::find(ExpansionForm form) const noexcept {
  for (const auto& e : entries_) {
    if (e.form == form) return &e;
  }
  return nullptr;
}

bool ErratumLedger::all_restored() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [&](const ErratumEntry& e) { return e.restored(threshold_); });
}

nlohmann::json ErratumLedger::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& e : entries_) {
    arr.push_back({{"form", to_string(e.form)},
                   {"literal", e.literal},
                   {"corrected", e.corrected},
                   {"max_rel_discrepancy_literal", e.max_rel_literal},
                   {"max_rel_discrepancy_corrected", e.max_rel_corrected},
                   {"restored", e.restored(threshold_)},
                   {"samples", e.samples}});
  }
  return {{"threshold", threshold_}, {"entries", arr}};
}

}  // namespace lsw
