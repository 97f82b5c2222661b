#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "thomform/lie.hpp"

namespace thomform {

enum class CheckStatus { kPass, kFail, kSkipped };

std::string to_string(CheckStatus s);

struct CheckResult {
  std::string check_id;
  nlohmann::json params = nlohmann::json::object();
  CheckStatus status = CheckStatus::kSkipped;
  /// First discrepancy in canonical text; always set for failures.
  std::string witness;
  /// Global sign found by THEOREM_MAIN.
  std::optional<int> sign_sigma;
  /// Convention sign recorded by BEREZIN_COMBINATORIAL (the q-dependent
  /// prefactor), TRANSGRESSION (epsilon) and SPLITTING (orientation).
  std::optional<int> recorded_sign;
  double elapsed_ms = 0.0;

  bool passed() const { return status == CheckStatus::kPass; }
  nlohmann::json to_json(bool with_timing = true) const;
};

/// Parameters of a single check; which fields are read depends on the check.
struct CheckParams {
  std::optional<int> p, q;
  /// Second block for SPLITTING.
  std::optional<int> p2, q2;
  /// Degree bound for HOWE_HERMITE.
  std::optional<int> n;
  /// EXAMPLE_11 point; all 20 built-in samples when unset.
  std::optional<Rational> t, x, xp;
};

/// Canonical identifiers in run_all order.
const std::vector<std::string>& check_ids();

/// Maps aliases ("theorem", "k-invariance", ...) to canonical ids; throws
/// for unknown names.
std::string canonical_check_id(std::string_view name);

/// Effective size cap: 8, lowered (never raised) by THOMFORM_MAX_PQ.
int max_pq_cap();

CheckResult run_check(std::string_view check_id, const CheckParams& params);

/// Every check over all signatures with p + q <= max_pq. An empty filter
/// runs everything.
std::vector<CheckResult> run_all(int max_pq, const std::vector<std::string>& filter = {});

CheckResult check_example11(const std::optional<Rational>& t = std::nullopt,
                            const std::optional<Rational>& x = std::nullopt,
                            const std::optional<Rational>& xp = std::nullopt);
/// Not bound by the size cap: only Lambda(p*) (x) Lambda(z0) is built.
CheckResult check_berezin_combinatorial(const SignatureCtx& ctx);
CheckResult check_splitting(const SignatureCtx& block1, const SignatureCtx& block2);

/// Both sides of the signature-(1,1) example at one point.
struct Example11Values {
  double machinery = 0.0;
  double closed_form = 0.0;
};
Example11Values example11_values(double t, double x, double xp);

/// First term where a and b differ, "" if equal.
std::string first_difference(const SuperForm& a, const SuperForm& b);

}  // namespace thomform
