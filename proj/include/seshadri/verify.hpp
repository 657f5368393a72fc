#pragma once

#include "seshadri/fatpoints.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace seshadri {

/// Outcome of one property suite. `counterexamples` holds the full inputs
/// and both sides of every violated inequality; it is empty exactly when
/// passed == attempted.
struct SuiteReport {
  std::string name;
  int attempted = 0;
  int passed = 0;
  nlohmann::json cases = nlohmann::json::array();
  nlohmann::json counterexamples = nlohmann::json::array();
  double wall_seconds = 0.0;

  bool ok() const noexcept { return passed == attempted; }
};

/// Wall time is left out unless asked for, so reports are byte-identical
/// across runs.
nlohmann::json to_json(const SuiteReport& report, bool include_timing = false);

struct VerifyConfig {
  std::vector<std::uint32_t> primes = default_primes(2);
  std::uint64_t seed = 0;
  int trials = 2;
};

struct Certificate {
  bool ok = false;
  std::string detail;
  /// Row index (point-major, then stratum order) of the first violated
  /// vanishing condition.
  std::optional<std::size_t> violated_condition;

  explicit operator bool() const noexcept { return ok; }
};

/// Re-checks an AlphaResult without the engine's row builder: the witness is
/// substituted into x = T_i y by explicit polynomial multiplication at every
/// point, its vanishing orders are compared with actual_mults, and a
/// condition matrix rebuilt the same way shows no kernel in degree alpha-1.
/// Explicit configurations are also checked modulo a second prime.
Certificate certify(const AlphaResult& result, const VerifyConfig& config = {});

/// For r = s^n and uniform m <= m_max: alpha_generic >= ceil(sum m_i / s^(n-1)).
SuiteReport suite_remark_alpha(int n, const std::vector<int>& r_list, int m_max, const VerifyConfig& config = {});

struct SemicontinuityCase {
  std::string name;
  FatPointScheme special;
};

/// Collinear triples and quintuples, three collinear double points plus
/// one, six points on a conic, four coplanar points in P^3.
std::vector<SemicontinuityCase> default_semicontinuity_cases();

/// alpha(special configuration) <= alpha_generic for the same (n, m).
SuiteReport suite_semicontinuity(const std::vector<SemicontinuityCase>& cases, const VerifyConfig& config = {});

using MultPair = std::pair<std::vector<int>, std::vector<int>>;

/// Deterministic multiplicity pairs with entries in [0, m_max]; the first
/// pair is (m, m), half of the rest are componentwise comparable.
std::vector<MultPair> sample_mult_pairs(int r, int m_max, int count, std::uint64_t seed);

/// Monotonicity, subadditivity and the counting bound on sampled pairs.
SuiteReport suite_alpha_axioms(int n, int r, const std::vector<MultPair>& m_samples, const VerifyConfig& config = {});

}  // namespace seshadri
