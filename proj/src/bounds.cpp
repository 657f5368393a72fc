#include "seshadri/bounds.hpp"

#include "seshadri/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace seshadri {

const char* to_string(Quantity q) { return q == Quantity::Epsilon ? "epsilon" : "epsilon-power"; }

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::Lower: return "lower";
    case BoundKind::Upper: return "upper";
    case BoundKind::Exact: return "exact";
    case BoundKind::ConjecturalLower: return "conjectural-lower";
    case BoundKind::ConjecturalExact: return "conjectural-exact";
  }
  return "?";
}

namespace {

struct AssumptionName {
  Assumption value;
  const char* name;
};

constexpr AssumptionName kAssumptionNames[] = {
    {Assumption::RAtLeast9, "r>=9"},
    {Assumption::RGreaterThan9, "r>9"},
    {Assumption::NagataConjecture, "nagata"},
    {Assumption::VeryAmple, "very-ample"},
    {Assumption::RAtLeastLn, "r>=L^n"},
    {Assumption::NSGenerator, "ns-generator"},
    {Assumption::ComplexSurface, "char0"},
    {Assumption::RIsNthPower, "r=s^n"},
    {Assumption::RLnIsSquare, "rL^2-square"},
};

}  // namespace

const char* to_string(Assumption a) {
  for (const auto& entry : kAssumptionNames) {
    if (entry.value == a) return entry.name;
  }
  return "?";
}

Assumption parse_assumption(const std::string& name) {
  for (const auto& entry : kAssumptionNames) {
    if (name == entry.name) return entry.value;
  }
  throw InvalidArgument("unknown assumption '" + name + "'");
}

bool is_external(Assumption a) {
  return a == Assumption::NagataConjecture || a == Assumption::VeryAmple || a == Assumption::NSGenerator ||
         a == Assumption::ComplexSurface;
}

bool Bound::is_lower() const noexcept {
  return kind == BoundKind::Lower || kind == BoundKind::Exact || kind == BoundKind::ConjecturalLower ||
         kind == BoundKind::ConjecturalExact;
}

bool Bound::is_upper() const noexcept {
  return kind == BoundKind::Upper || kind == BoundKind::Exact || kind == BoundKind::ConjecturalExact;
}

bool Bound::is_conjectural() const noexcept {
  return kind == BoundKind::ConjecturalLower || kind == BoundKind::ConjecturalExact ||
         assumptions.contains(Assumption::NagataConjecture);
}

Bound Bound::as_epsilon() const {
  if (quantity == Quantity::Epsilon) return *this;
  Bound out = *this;
  out.quantity = Quantity::Epsilon;
  out.value = nth_root(value, static_cast<unsigned long>(n - 1));
  return out;
}

Bound Bound::as_power() const {
  if (quantity == Quantity::EpsilonPower) return *this;
  Bound out = *this;
  out.quantity = Quantity::EpsilonPower;
  out.value = nth_power(value, static_cast<unsigned long>(n - 1));
  return out;
}

nlohmann::json to_json(const Bound& b) {
  nlohmann::json assumptions = nlohmann::json::array();
  for (Assumption a : b.assumptions) assumptions.push_back(to_string(a));
  nlohmann::json out = {
      {"value", to_string(b.value)},
      {"radical", to_json(b.value)},
      {"approx", b.value.to_double()},
      {"kind", to_string(b.kind)},
      {"quantity", to_string(b.quantity)},
      {"n", b.n},
      {"assumptions", assumptions},
      {"source", b.source},
  };
  if (!b.note.empty()) out["note"] = b.note;
  return out;
}

nlohmann::json to_json(const SurfaceContext& ctx) {
  return {{"n", ctx.n}, {"Ln", to_string(ctx.self_intersection)}, {"eps_point", to_json(ctx.eps_point)}};
}

namespace {

Bound make_bound(RadicalValue value, int n, BoundKind kind, std::set<Assumption> assumptions, std::string source) {
  if (value.sign() <= 0) throw InvalidArgument("bound values must be positive");
  Bound b;
  b.value = std::move(value);
  b.n = n;
  b.kind = kind;
  b.assumptions = std::move(assumptions);
  b.source = std::move(source);
  return b;
}

void require_lower_input(const Bound& b, const char* what) {
  if (!b.is_lower()) throw InvalidArgument(std::string(what) + " must be a lower or exact bound");
  if (b.value.sign() <= 0) throw InvalidArgument(std::string(what) + " must be positive");
}

bool is_square(long value) { return value >= 0 && is_perfect_square(Integer(value)); }

BoundKind lower_kind(const std::set<Assumption>& assumptions) {
  return assumptions.contains(Assumption::NagataConjecture) ? BoundKind::ConjecturalLower : BoundKind::Lower;
}

}  // namespace

Bound unit_point_bound(int n) { return make_bound(RadicalValue(1), n, BoundKind::Exact, {}, "point"); }

Bound trivial_upper(const SurfaceContext& ctx, int r) {
  if (r < 1) throw InvalidArgument("trivial_upper requires r >= 1");
  if (ctx.n < 1) throw InvalidArgument("dimension must be >= 1");
  if (ctx.self_intersection < 1) throw InvalidArgument("L^n must be >= 1");
  RadicalValue value = RadicalValue::power(make_rational(ctx.self_intersection, r), make_rational(1, ctx.n));
  return make_bound(std::move(value), ctx.n, BoundKind::Upper, {}, "trivial");
}

Bound nagata_conjectured(int r) {
  if (r < 9) throw InvalidArgument("Nagata's bound needs r >= 9");
  RadicalValue value = RadicalValue::power(Rational(r), make_rational(-1, 2));
  if (is_square(r)) return make_bound(std::move(value), 2, BoundKind::Exact, {Assumption::RAtLeast9}, "nagata");
  return make_bound(std::move(value), 2, BoundKind::ConjecturalExact,
                    {Assumption::RAtLeast9, Assumption::NagataConjecture}, "nagata");
}

Bound choodnovsky_exact(int n, int s) {
  if (n < 2) throw InvalidArgument("choodnovsky_exact needs n >= 2");
  if (s < 1) throw InvalidArgument("choodnovsky_exact needs s >= 1");
  return make_bound(RadicalValue(make_rational(1, s)), n, BoundKind::Exact, {Assumption::RIsNthPower}, "choodnovsky");
}

Bound combine_main_theorem(const Bound& eps_point, const Bound& eps_projective) {
  require_lower_input(eps_point, "point bound");
  require_lower_input(eps_projective, "projective bound");
  if (eps_point.n != eps_projective.n) {
    throw InvalidArgument("dimension mismatch: point bound has n=" + std::to_string(eps_point.n) +
                          ", projective bound has n=" + std::to_string(eps_projective.n));
  }
  Bound a = eps_point.as_epsilon();
  Bound b = eps_projective.as_epsilon();
  std::set<Assumption> assumptions = a.assumptions;
  assumptions.insert(b.assumptions.begin(), b.assumptions.end());
  BoundKind kind = (a.is_conjectural() || b.is_conjectural()) ? BoundKind::ConjecturalLower : BoundKind::Lower;
  if (kind == BoundKind::ConjecturalLower) assumptions.insert(Assumption::NagataConjecture);
  return make_bound(a.value * b.value, a.n, kind, std::move(assumptions), "main-theorem");
}

Bound square_case_lower(int n, int s, const Bound& eps_point) {
  Bound out = combine_main_theorem(eps_point, choodnovsky_exact(n, s));
  out.source = "choodnovsky";
  out.note = "s=" + std::to_string(s);
  return out;
}

Bound nagata_implies_surface_lower(int r, const Bound& eps_point) {
  if (r < 9) throw InvalidArgument("Nagata's bound needs r >= 9");
  if (eps_point.n != 2) throw InvalidArgument("nagata_implies_surface_lower is for surfaces (n = 2)");
  Bound out = combine_main_theorem(eps_point, nagata_conjectured(r));
  out.source = "nagata";
  return out;
}

Bound steffens_lower(const Integer& self_intersection) {
  if (self_intersection < 1) throw InvalidArgument("L^2 must be >= 1");
  Integer root = integer_root_floor(self_intersection, 2);
  return make_bound(RadicalValue(Rational(root)), 2, BoundKind::Lower,
                    {Assumption::NSGenerator, Assumption::ComplexSurface}, "steffens");
}

Bound tutaj_lower(int r, const Bound& eps_point) {
  if (r <= 9) throw InvalidArgument("tutaj_lower needs r > 9");
  require_lower_input(eps_point, "point bound");
  if (eps_point.n != 2) throw InvalidArgument("tutaj_lower is for surfaces (n = 2)");
  Bound point = eps_point.as_epsilon();
  RadicalValue factor = RadicalValue::power(make_rational(12, 12 * Integer(r) + 1), make_rational(1, 2));
  std::set<Assumption> assumptions = point.assumptions;
  assumptions.insert(Assumption::RGreaterThan9);
  assumptions.insert(Assumption::ComplexSurface);
  BoundKind kind = lower_kind(assumptions);
  return make_bound(point.value * factor, 2, kind, std::move(assumptions), "tutaj");
}

Bound harbourne_piecewise(int r, int s, int d, const Bound& eps_point) {
  if (r < 1 || s < 1 || s > r || d < 1) {
    throw InvalidArgument("harbourne_piecewise needs 1 <= s <= r and d >= 1");
  }
  require_lower_input(eps_point, "point bound");
  if (eps_point.n != 2) throw InvalidArgument("harbourne_piecewise is for surfaces (n = 2)");
  Bound point = eps_point.as_epsilon();
  Integer s2 = Integer(s) * s;
  Integer rd2 = Integer(r) * d * d;
  // At s^2 = r d^2 both branches give s/(rd) = d/s.
  Rational factor = s2 <= rd2 ? make_rational(s, Integer(r) * d) : make_rational(d, s);
  Bound out = make_bound(point.value * RadicalValue(factor), 2, lower_kind(point.assumptions), point.assumptions,
                         "harbourne-piecewise");
  out.note = "s=" + std::to_string(s) + ",d=" + std::to_string(d);
  return out;
}

Bound harbourne_surface(int r, int s, int d, const Integer& self_intersection) {
  if (r < 1 || s < 1 || d < 1) throw InvalidArgument("harbourne_surface needs r, s, d >= 1");
  if (self_intersection < 1) throw InvalidArgument("L^2 must be >= 1");
  Integer s2 = Integer(s) * s;
  Integer threshold = Integer(r) * d * d * self_intersection;
  Rational value = s2 <= threshold ? make_rational(s, Integer(r) * d) : make_rational(d * self_intersection, s);
  Bound out = make_bound(RadicalValue(value), 2, BoundKind::Lower, {Assumption::VeryAmple, Assumption::RAtLeastLn},
                         "harbourne-surface");
  out.note = "s=" + std::to_string(s) + ",d=" + std::to_string(d);
  return out;
}

std::optional<Bound> harbourne_square_maximal(int r, const Integer& self_intersection) {
  if (r < 1 || self_intersection < 1) return std::nullopt;
  if (Integer(r) < self_intersection) return std::nullopt;
  if (!is_perfect_square(Integer(r) * self_intersection)) return std::nullopt;
  RadicalValue value = RadicalValue::power(make_rational(self_intersection, r), make_rational(1, 2));
  return make_bound(std::move(value), 2, BoundKind::Exact,
                    {Assumption::VeryAmple, Assumption::RLnIsSquare, Assumption::RAtLeastLn}, "harbourne-square");
}

Integer remark_alpha_floor(const RadicalValue& eps_projective_power, std::span<const int> mults,
                           std::size_t budget_bits) {
  long total = 0;
  for (int m : mults) {
    if (m < 0) throw InvalidArgument("multiplicities must be non-negative");
    total += m;
  }
  return radical_ceil(eps_projective_power * RadicalValue(total), budget_bits);
}

Bound eps_upper_from_witness(int n, int degree, std::span<const int> actual_mults) {
  if (n < 2) throw InvalidArgument("eps_upper_from_witness needs n >= 2");
  if (degree < 1) throw InvalidArgument("degree must be >= 1");
  long total = std::accumulate(actual_mults.begin(), actual_mults.end(), 0L);
  if (total < 1) throw InvalidArgument("zero total multiplicity gives no upper bound");
  RadicalValue power(make_rational(degree, total));
  Bound out = make_bound(nth_root(power, static_cast<unsigned long>(n - 1)), n, BoundKind::Upper, {}, "sweep");
  return out;
}

SweepResult eps_upper_sweep(int n, int r, int m_max, int trials, const std::vector<std::uint32_t>& primes,
                            std::uint64_t seed) {
  if (m_max < 1) throw InvalidArgument("m_max must be >= 1");
  if (r < 1) throw InvalidArgument("r must be >= 1");
  SweepResult out;
  out.n = n;
  out.r = r;
  for (int m = 1; m <= m_max; ++m) {
    SweepRow row;
    row.m = m;
    row.result = alpha_generic(n, uniform_mults(static_cast<std::size_t>(r), m), trials, primes, seed);
    long total = std::accumulate(row.result.actual_mults.begin(), row.result.actual_mults.end(), 0L);
    row.ratio = make_rational(row.result.alpha, total);
    row.bound = eps_upper_from_witness(n, row.result.alpha, row.result.actual_mults);
    row.bound.note = "m=" + std::to_string(m);
    if (out.rows.empty() || radical_less(row.bound.value, out.best.value)) out.best = row.bound;
    row.best_so_far = out.best;
    out.rows.push_back(std::move(row));
  }
  return out;
}

nlohmann::json to_json(const SweepResult& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : s.rows) {
    rows.push_back({{"m", row.m},
                    {"alpha", row.result.alpha},
                    {"actual_mults", row.result.actual_mults},
                    {"ratio", to_string(row.ratio)},
                    {"bound", to_json(row.bound)},
                    {"best", to_string(row.best_so_far.value)},
                    {"agreeing_trials", row.result.agreeing_trials()},
                    {"trials", row.result.trial_log.size()}});
  }
  return {{"n", s.n}, {"r", s.r}, {"rows", rows}, {"best", to_json(s.best)}};
}

std::string to_csv(const SweepResult& s) {
  std::ostringstream out;
  out << "m,alpha,sum_actual,ratio,bound,bound_approx,best\n";
  for (const auto& row : s.rows) {
    long total = std::accumulate(row.result.actual_mults.begin(), row.result.actual_mults.end(), 0L);
    out << row.m << ',' << row.result.alpha << ',' << total << ',' << to_string(row.ratio) << ','
        << to_string(row.bound.value) << ',' << nlohmann::json(row.bound.value.to_double()).dump() << ','
        << to_string(row.best_so_far.value) << '\n';
  }
  return out.str();
}

Rational asymptotic_factor(int k, int n) {
  if (k < 0) throw InvalidArgument("asymptotic_factor needs k >= 0");
  if (n < 2) throw InvalidArgument("asymptotic_factor needs n >= 2");
  return make_rational(k + 1, k + n);
}

DerivationRecord symmetrization_chain(int n, int r, int d, const std::vector<int>& mults, int k) {
  if (n < 2) throw InvalidArgument("symmetrization_chain needs n >= 2");
  if (d < 1) throw InvalidArgument("symmetrization_chain needs d >= 1");
  if (k < 1) throw InvalidArgument("symmetrization_chain needs k >= 1");
  if (r < 1 || mults.size() != static_cast<std::size_t>(r)) {
    throw InvalidArgument("symmetrization_chain needs r >= 1 multiplicities");
  }
  long total = 0;
  for (int m : mults) {
    if (m < 0) throw InvalidArgument("multiplicities must be non-negative");
    total += m;
  }
  if (total < 1) throw InvalidArgument("symmetrization_chain needs some m_i >= 1");

  DerivationRecord rec;
  rec.n = n;
  rec.r = r;
  rec.d = d;
  rec.mults = mults;
  rec.k = k;
  rec.ratio_dm = make_rational(Integer(r) * d, total);
  rec.t_bound = Rational(k + n) * rec.ratio_dm;
  rec.ah_floor = RadicalValue(k + 1) * RadicalValue::power(Rational(r), make_rational(1, n));
  rec.final_factor = asymptotic_factor(k, n);
  rec.degree_step_consistent = radical_cmp(RadicalValue(rec.t_bound), rec.ah_floor) >= 0;
  RadicalValue rhs = RadicalValue(rec.final_factor) * RadicalValue::power(Rational(r), make_rational(-(n - 1), n));
  rec.conclusion_holds = radical_cmp(RadicalValue(make_rational(d, total)), rhs) >= 0;
  rec.conditional_on_sk = true;
  return rec;
}

nlohmann::json to_json(const DerivationRecord& rec) {
  return {{"n", rec.n},
          {"r", rec.r},
          {"d", rec.d},
          {"mults", rec.mults},
          {"k", rec.k},
          {"ratio_DM", to_string(rec.ratio_dm)},
          {"t_bound", to_string(rec.t_bound)},
          {"ah_floor", to_string(rec.ah_floor)},
          {"final_factor", to_string(rec.final_factor)},
          {"degree_step_consistent", rec.degree_step_consistent},
          {"conclusion_holds", rec.conclusion_holds},
          {"conditional_on", "r >= s_k(n), no effective value known"}};
}

namespace {

bool allowed_by(const Bound& b, const std::set<Assumption>& allowed) {
  return std::all_of(b.assumptions.begin(), b.assumptions.end(),
                     [&](Assumption a) { return !is_external(a) || allowed.contains(a); });
}

// Exact r-th root of an integer when it exists.
std::optional<int> integer_nth_root(int r, int n) {
  Integer root;
  if (!exact_root(Integer(r), static_cast<unsigned long>(n), root)) return std::nullopt;
  return static_cast<int>(root.get_si());
}

// ceil(sqrt(r)) + 1, the largest d in the Harbourne search window.
int harbourne_d_max(int r) {
  Integer c = integer_root_floor(Integer(r), 2);
  if (c * c < r) c += 1;
  return static_cast<int>(c.get_si()) + 1;
}

// For fixed d the coefficient is s/(rd) while s^2 <= r d^2 L^2 and
// d L^2 / s beyond, so only s = floor(d sqrt(r L^2)) and its successor
// can be optimal. Both searches keep 1 <= s <= r.
std::pair<int, int> best_harbourne_pair(int r, const Integer& l2) {
  Rational best = -1;
  std::pair<int, int> arg{1, 1};
  for (int d = 1; d <= harbourne_d_max(r); ++d) {
    const Integer threshold = Integer(r) * d * d * l2;
    const Integer s_max = r;
    const Integer s_star = integer_root_floor(threshold, 2);
    for (Integer s : {s_star, Integer(s_star + 1)}) {
      if (s < 1 || s > s_max) continue;
      Rational value = s * s <= threshold ? make_rational(s, Integer(r) * d) : make_rational(d * l2, s);
      if (value > best) {
        best = value;
        arg = {static_cast<int>(s.get_si()), d};
      }
    }
  }
  return arg;
}

}  // namespace

BoundsReport best_bounds(const SurfaceContext& ctx, int r, const std::set<Assumption>& allowed,
                         const std::vector<Bound>& extra_upper) {
  if (r < 1) throw InvalidArgument("best_bounds needs r >= 1");
  if (ctx.eps_point.n != ctx.n) throw InvalidArgument("point bound dimension differs from the context");
  BoundsReport report;
  report.context = ctx;
  report.r = r;
  report.allowed = allowed;

  auto offer_lower = [&](Bound b) {
    if (allowed_by(b, allowed)) report.lower.push_back(std::move(b));
  };
  auto offer_upper = [&](Bound b) {
    if (allowed_by(b, allowed)) report.upper.push_back(std::move(b));
  };

  const Bound& eps = ctx.eps_point;
  if (auto s = integer_nth_root(r, ctx.n); s && ctx.n >= 2) offer_lower(square_case_lower(ctx.n, *s, eps));
  if (ctx.n == 2) {
    if (r >= 9) offer_lower(nagata_implies_surface_lower(r, eps));
    if (r > 9) offer_lower(tutaj_lower(r, eps));
    auto [s, d] = best_harbourne_pair(r, Integer(1));
    offer_lower(harbourne_piecewise(r, s, d, eps));
    if (Integer(r) >= ctx.self_intersection) {
      auto [s2, d2] = best_harbourne_pair(r, ctx.self_intersection);
      offer_lower(harbourne_surface(r, s2, d2, ctx.self_intersection));
    }
    if (auto sq = harbourne_square_maximal(r, ctx.self_intersection)) {
      offer_lower(*sq);
      offer_upper(*sq);
    }
  }
  offer_upper(trivial_upper(ctx, r));
  for (const Bound& b : extra_upper) {
    if (!b.is_upper()) throw InvalidArgument("extra upper bound has kind " + std::string(to_string(b.kind)));
    offer_upper(b.as_epsilon());
  }

  for (const Bound& b : report.lower) {
    if (!report.best_lower || radical_cmp(b.value, report.best_lower->value) > 0) report.best_lower = b;
  }
  for (const Bound& b : report.upper) {
    if (!report.best_upper || radical_cmp(b.value, report.best_upper->value) < 0) report.best_upper = b;
  }
  report.pinned = report.best_lower && report.best_upper &&
                  radical_cmp(report.best_lower->value, report.best_upper->value) == 0;
  return report;
}

nlohmann::json to_json(const BoundsReport& report) {
  nlohmann::json assumptions = nlohmann::json::array();
  for (Assumption a : report.allowed) assumptions.push_back(to_string(a));
  nlohmann::json lower = nlohmann::json::array();
  for (const Bound& b : report.lower) lower.push_back(to_json(b));
  nlohmann::json upper = nlohmann::json::array();
  for (const Bound& b : report.upper) upper.push_back(to_json(b));
  return {{"context", to_json(report.context)},
          {"r", report.r},
          {"assumptions", assumptions},
          {"lower", lower},
          {"upper", upper},
          {"best_lower", report.best_lower ? to_json(*report.best_lower) : nlohmann::json()},
          {"best_upper", report.best_upper ? to_json(*report.best_upper) : nlohmann::json()},
          {"pinned", report.pinned}};
}

}  // namespace seshadri
