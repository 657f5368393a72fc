#pragma once

#include "seshadri/fatpoints.hpp"
#include "seshadri/radical.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace seshadri {

/// Which quantity a bound constrains: the codimension-one Seshadri constant
/// itself, or its (n-1)-th power.
enum class Quantity { Epsilon, EpsilonPower };

enum class BoundKind { Lower, Upper, Exact, ConjecturalLower, ConjecturalExact };

/// Hypotheses a bound depends on. The external ones (Nagata's conjecture,
/// very ampleness, NS generator, complex surface) must be granted by the
/// caller; the numeric ones are checked by the evaluator that attaches them.
enum class Assumption {
  RAtLeast9,
  RGreaterThan9,
  NagataConjecture,
  VeryAmple,
  RAtLeastLn,
  NSGenerator,
  ComplexSurface,
  RIsNthPower,
  RLnIsSquare,
};

const char* to_string(Quantity q);
const char* to_string(BoundKind k);
/// Stable names: "r>=9", "r>9", "nagata", "very-ample", "r>=L^n",
/// "ns-generator", "char0", "r=s^n", "rL^2-square".
const char* to_string(Assumption a);
/// Accepts the names above; throws InvalidArgument otherwise.
Assumption parse_assumption(const std::string& name);
bool is_external(Assumption a);

struct Bound {
  RadicalValue value;
  int n = 2;
  Quantity quantity = Quantity::Epsilon;
  BoundKind kind = BoundKind::Lower;
  std::set<Assumption> assumptions;
  std::string source;
  /// Free-form parameters of the winning instance, e.g. "s=3,d=1".
  std::string note;

  bool is_lower() const noexcept;
  bool is_upper() const noexcept;
  bool is_conjectural() const noexcept;

  /// Same bound expressed on epsilon (root) or on epsilon^(n-1) (power).
  Bound as_epsilon() const;
  Bound as_power() const;
};

nlohmann::json to_json(const Bound& b);

/// The polarized variety (X, L) and what is known about one point.
struct SurfaceContext {
  int n = 2;
  /// L^n.
  Integer self_intersection = 1;
  /// Lower (or exact) bound on epsilon_{n-1}(L, p) at a smooth point.
  Bound eps_point;
};

nlohmann::json to_json(const SurfaceContext& ctx);

/// Bound with value 1 and no assumptions, the point constant of O(1) on P^n.
Bound unit_point_bound(int n);

/// Upper bound (L^n / r)^(1/n).
Bound trivial_upper(const SurfaceContext& ctx, int r);

/// 1/sqrt(r) on P^2; Exact (and unconditional) when r is a square.
Bound nagata_conjectured(int r);

/// epsilon_{n-1}(O(1), s^n) = 1/s.
Bound choodnovsky_exact(int n, int s);

/// Product of a one-point bound on X and an r-point bound on P^n.
Bound combine_main_theorem(const Bound& eps_point, const Bound& eps_projective);

/// eps_point / s at r = s^n.
Bound square_case_lower(int n, int s, const Bound& eps_point);

/// eps_point / sqrt(r) on surfaces, r >= 9, assuming Nagata unless r is a square.
Bound nagata_implies_surface_lower(int r, const Bound& eps_point);

/// floor(sqrt(L^2)) at a very general point when L generates NS(X).
Bound steffens_lower(const Integer& self_intersection);

/// eps_point * (12 / (12 r + 1))^(1/2), for r > 9.
Bound tutaj_lower(int r, const Bound& eps_point);

/// (s/(rd)) eps_point if s^2 <= r d^2, (d/s) eps_point if s^2 >= r d^2.
Bound harbourne_piecewise(int r, int s, int d, const Bound& eps_point);

/// s/(rd) if s^2 <= r d^2 L^2, d L^2 / s otherwise.
Bound harbourne_surface(int r, int s, int d, const Integer& self_intersection);

/// sqrt(L^2 / r), exact, when r L^2 is a square and r >= L^2.
std::optional<Bound> harbourne_square_maximal(int r, const Integer& self_intersection);

/// ceil(eps_power * sum m_i): the smallest degree allowed by a lower bound on
/// epsilon_{n-1}(O(1), points)^(n-1).
Integer remark_alpha_floor(const RadicalValue& eps_projective_power, std::span<const int> mults,
                           std::size_t budget_bits = kDefaultComparisonBudgetBits);

/// Upper bound (d / sum actual_mults)^(1/(n-1)) from one hypersurface.
Bound eps_upper_from_witness(int n, int degree, std::span<const int> actual_mults);

struct SweepRow {
  int m = 0;
  AlphaResult result;
  Rational ratio;  // degree / sum of actual multiplicities
  Bound bound;
  Bound best_so_far;
};

struct SweepResult {
  int n = 0;
  int r = 0;
  std::vector<SweepRow> rows;
  Bound best;
};

/// For m = 1..m_max: generic alpha with uniform multiplicity m, turned into
/// an upper bound through the witness's actual multiplicities.
SweepResult eps_upper_sweep(int n, int r, int m_max, int trials, const std::vector<std::uint32_t>& primes,
                            std::uint64_t seed);

nlohmann::json to_json(const SweepResult& s);
/// m,alpha,sum_actual,ratio,bound,bound_approx,best
std::string to_csv(const SweepResult& s);

/// Bookkeeping of the symmetrization argument: a degree-d form with
/// multiplicities m_i at r general points, symmetrized over all
/// permutations, raised to the power k+n and compared with the
/// double-point floor (k+1) r^(1/n).
struct DerivationRecord {
  int n = 0;
  int r = 0;
  int d = 0;
  std::vector<int> mults;
  int k = 0;
  /// D/M = (r! d) / ((r-1)! sum m_i) = r d / sum m_i.
  Rational ratio_dm;
  /// (k+n) D/M.
  Rational t_bound;
  /// (k+1) r^(1/n).
  RadicalValue ah_floor;
  /// (k+1)/(k+n).
  Rational final_factor;
  /// t_bound >= ah_floor.
  bool degree_step_consistent = false;
  /// d / sum m_i >= final_factor * r^(-(n-1)/n).
  bool conclusion_holds = false;
  /// The step through ah_floor only holds for r >= s_k(n), which has no
  /// effective value; the record never asserts it.
  bool conditional_on_sk = true;
};

DerivationRecord symmetrization_chain(int n, int r, int d, const std::vector<int>& mults, int k);

nlohmann::json to_json(const DerivationRecord& rec);

/// (k+1)/(k+n).
Rational asymptotic_factor(int k, int n);

struct BoundsReport {
  SurfaceContext context;
  int r = 0;
  std::set<Assumption> allowed;
  std::vector<Bound> lower;
  std::vector<Bound> upper;
  std::optional<Bound> best_lower;
  std::optional<Bound> best_upper;
  bool pinned = false;
};

/// Evaluates every bound whose external assumptions are in `allowed`,
/// picks the best lower and upper bound (first one wins ties) and reports
/// whether they meet. `extra_upper` carries engine-derived upper bounds
/// (for example a sweep) when the context is O(1) on P^n.
BoundsReport best_bounds(const SurfaceContext& ctx, int r, const std::set<Assumption>& allowed,
                         const std::vector<Bound>& extra_upper = {});

nlohmann::json to_json(const BoundsReport& report);

}  // namespace seshadri
