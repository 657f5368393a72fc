#include "seshadri/fatpoints.hpp"

#include "seshadri/error.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <string>
#include <thread>

namespace seshadri {

const char* to_string(Provenance p) { return p == Provenance::Explicit ? "explicit" : "random"; }

const char* to_string(DoublePointStatus s) { return s == DoublePointStatus::Regular ? "regular" : "exceptional"; }

namespace {

constexpr std::size_t kMaxMatrixEntries = std::size_t{1} << 27;

template <typename T, typename IsZero, typename Mul, typename Equal>
void check_points(const std::vector<std::vector<T>>& points, int n, IsZero is_zero, Mul mul, Equal equal) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != static_cast<std::size_t>(n + 1)) {
      throw InvalidArgument("point " + std::to_string(i) + " does not have n+1 coordinates");
    }
    if (std::all_of(points[i].begin(), points[i].end(), is_zero)) {
      throw InvalidArgument("point " + std::to_string(i) + " has all coordinates zero");
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      bool proportional = true;
      for (int a = 0; a <= n && proportional; ++a) {
        for (int b = a + 1; b <= n && proportional; ++b) {
          if (!equal(mul(points[i][a], points[j][b]), mul(points[i][b], points[j][a]))) proportional = false;
        }
      }
      if (proportional) {
        throw InvalidArgument("points " + std::to_string(i) + " and " + std::to_string(j) +
                              " coincide as projective points");
      }
    }
  }
}

void check_field_points(const std::vector<FieldPoint>& points, int n, const PrimeField& field) {
  check_points(
      points, n, [](std::uint32_t x) { return x == 0; },
      [&](std::uint32_t a, std::uint32_t b) { return field.mul(a, b); },
      [](std::uint32_t a, std::uint32_t b) { return a == b; });
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

PointConfiguration PointConfiguration::from_rational(int n, std::vector<RationalPoint> points, bool special) {
  if (n < 1) throw InvalidArgument("ambient dimension n must be >= 1");
  check_points(
      points, n, [](const Rational& x) { return x == 0; },
      [](const Rational& a, const Rational& b) { return Rational(a * b); },
      [](const Rational& a, const Rational& b) { return a == b; });
  PointConfiguration out;
  out.n_ = n;
  out.provenance_ = Provenance::Explicit;
  out.special_ = special;
  out.rational_ = std::move(points);
  return out;
}

PointConfiguration PointConfiguration::from_field(int n, std::vector<FieldPoint> points, const PrimeField& field,
                                                  std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("ambient dimension n must be >= 1");
  for (const auto& pt : points) {
    for (std::uint32_t x : pt) {
      if (x >= field.modulus()) throw InvalidArgument("field coordinate out of range");
    }
  }
  check_field_points(points, n, field);
  PointConfiguration out;
  out.n_ = n;
  out.provenance_ = Provenance::Random;
  out.seed_ = seed;
  out.prime_ = field.modulus();
  out.field_points_ = std::move(points);
  return out;
}

PointConfiguration PointConfiguration::random(int n, std::size_t r, const PrimeField& field, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("ambient dimension n must be >= 1");
  std::mt19937_64 engine(splitmix64(seed ^ (static_cast<std::uint64_t>(field.modulus()) << 32)));
  const std::uint32_t p = field.modulus();
  std::vector<FieldPoint> points;
  while (points.size() < r) {
    FieldPoint pt(static_cast<std::size_t>(n + 1));
    for (auto& x : pt) x = static_cast<std::uint32_t>(engine() % p);
    if (std::all_of(pt.begin(), pt.end(), [](std::uint32_t x) { return x == 0; })) continue;
    points.push_back(std::move(pt));
    try {
      check_field_points(points, n, field);
    } catch (const InvalidArgument&) {
      points.pop_back();
    }
  }
  return from_field(n, std::move(points), field, seed);
}

std::vector<FieldPoint> PointConfiguration::reduce(const PrimeField& field) const {
  if (provenance_ == Provenance::Random) {
    if (field.modulus() != prime_) {
      throw InvalidArgument("random configuration over " + std::to_string(prime_) + " cannot be read modulo " +
                            std::to_string(field.modulus()));
    }
    return field_points_;
  }
  std::vector<FieldPoint> out;
  out.reserve(rational_.size());
  for (const auto& pt : rational_) {
    FieldPoint reduced;
    reduced.reserve(pt.size());
    for (const auto& x : pt) reduced.push_back(field.from_rational(x));
    out.push_back(std::move(reduced));
  }
  check_field_points(out, n_, field);
  return out;
}

void FatPointScheme::validate() const {
  if (mults.size() != config.size()) {
    throw InvalidArgument("multiplicity vector has length " + std::to_string(mults.size()) + " but there are " +
                          std::to_string(config.size()) + " points");
  }
  for (int m : mults) {
    if (m < 0) throw InvalidArgument("multiplicities must be non-negative");
  }
}

int FatPointScheme::total_multiplicity() const {
  int total = 0;
  for (int m : mults) total += m;
  return total;
}

namespace {

struct RowTables {
  std::vector<std::vector<std::uint32_t>> powers;  // powers[k][e] = P_k^e
  std::vector<std::vector<std::uint32_t>> binom;   // binom[a][b] = C(a, b) mod p
};

RowTables make_tables(const FieldPoint& point, int degree, const PrimeField& field) {
  RowTables t;
  t.powers.resize(point.size());
  for (std::size_t k = 0; k < point.size(); ++k) {
    auto& row = t.powers[k];
    row.resize(static_cast<std::size_t>(degree) + 1);
    row[0] = 1;
    for (int e = 1; e <= degree; ++e) row[e] = field.mul(row[e - 1], point[k]);
  }
  t.binom.assign(static_cast<std::size_t>(degree) + 1, std::vector<std::uint32_t>(static_cast<std::size_t>(degree) + 1, 0));
  for (int a = 0; a <= degree; ++a) {
    t.binom[a][0] = 1;
    for (int b = 1; b <= a; ++b) t.binom[a][b] = field.add(t.binom[a - 1][b - 1], b <= a - 1 ? t.binom[a - 1][b] : 0);
  }
  return t;
}

std::size_t pivot_of(const FieldPoint& point) {
  for (std::size_t k = 0; k < point.size(); ++k) {
    if (point[k] != 0) return k;
  }
  throw InvalidArgument("point has all coordinates zero");
}

// Coefficient functional of y0^(d-|beta|) y'^beta in F(T y), written into `out`.
void stratum_row(const std::vector<Exponent>& columns, const FieldPoint& point, std::size_t pivot,
                 const Exponent& beta, const RowTables& t, const PrimeField& field, std::uint32_t* out) {
  const std::size_t nv = point.size();
  for (std::size_t col = 0; col < columns.size(); ++col) {
    const Exponent& a = columns[col];
    std::uint32_t value = t.powers[pivot][a[pivot]];
    std::size_t bi = 0;
    for (std::size_t k = 0; k < nv && value != 0; ++k) {
      if (k == pivot) continue;
      int b = beta[bi++];
      if (b > a[k]) {
        value = 0;
        break;
      }
      value = field.mul(value, field.mul(t.binom[a[k]][b], t.powers[k][a[k] - b]));
    }
    out[col] = value;
  }
}

}  // namespace

ConditionMatrix build_condition_matrix(std::span<const FieldPoint> points, std::span<const int> mults, int n,
                                       int degree, const PrimeField& field) {
  if (degree < 1) throw InvalidArgument("degree must be >= 1");
  if (points.size() != mults.size()) throw InvalidArgument("points and multiplicities differ in length");
  const std::vector<Exponent> columns = monomials(n + 1, degree);
  std::size_t rows = 0;
  for (int m : mults) {
    for (int j = 0; j < m; ++j) rows += monomial_count(n, j);
  }
  if (rows * columns.size() > kMaxMatrixEntries) {
    throw InvalidArgument("condition matrix " + std::to_string(rows) + "x" + std::to_string(columns.size()) +
                          " exceeds the size limit");
  }
  ConditionMatrix out{degree, ModMatrix(rows, columns.size(), field), {}};
  out.row_point.reserve(rows);
  std::size_t row = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (mults[i] == 0) continue;
    const FieldPoint& pt = points[i];
    if (pt.size() != static_cast<std::size_t>(n + 1)) throw InvalidArgument("point dimension mismatch");
    const std::size_t pivot = pivot_of(pt);
    const RowTables tables = make_tables(pt, degree, field);
    for (int j = 0; j < mults[i]; ++j) {
      for (const Exponent& beta : monomials(n, j)) {
        stratum_row(columns, pt, pivot, beta, tables, field, out.matrix.row(row).data());
        out.row_point.push_back(i);
        ++row;
      }
    }
  }
  return out;
}

ConditionMatrix build_condition_matrix(const FatPointScheme& scheme, int degree, const PrimeField& field) {
  scheme.validate();
  const auto points = scheme.config.reduce(field);
  return build_condition_matrix(points, scheme.mults, scheme.config.n(), degree, field);
}

int actual_multiplicity(std::span<const std::uint32_t> form, int n, int degree, const FieldPoint& point,
                        const PrimeField& field) {
  const std::vector<Exponent> columns = monomials(n + 1, degree);
  if (form.size() != columns.size()) throw InvalidArgument("form length does not match degree");
  if (std::all_of(form.begin(), form.end(), [](std::uint32_t x) { return x == 0; })) {
    throw InvalidArgument("zero form has no vanishing order");
  }
  const std::size_t pivot = pivot_of(point);
  const RowTables tables = make_tables(point, degree, field);
  std::vector<std::uint32_t> functional(columns.size());
  const std::uint64_t p = field.modulus();
  for (int j = 0; j <= degree; ++j) {
    for (const Exponent& beta : monomials(n, j)) {
      stratum_row(columns, point, pivot, beta, tables, field, functional.data());
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < columns.size(); ++c) acc = (acc + static_cast<std::uint64_t>(functional[c]) * form[c]) % p;
      if (acc != 0) return j;
    }
  }
  // F(T y) has the same coefficients as F up to an invertible change of variables.
  throw Error("nonzero form with vanishing order above its degree");
}

Integer condition_count(int n, std::span<const int> mults) {
  Integer total = 0;
  for (int m : mults) {
    if (m < 0) throw InvalidArgument("multiplicities must be non-negative");
    if (m >= 1) total += binomial(static_cast<unsigned long>(m - 1 + n), static_cast<unsigned long>(n));
  }
  return total;
}

int expected_alpha(int n, std::span<const int> mults) {
  if (n < 1) throw InvalidArgument("ambient dimension n must be >= 1");
  Integer conditions = condition_count(n, mults);
  if (conditions == 0) throw DegenerateScheme("all multiplicities are zero");
  int d = 1;
  while (binomial(static_cast<unsigned long>(d + n), static_cast<unsigned long>(n)) <= conditions) ++d;
  return d;
}

int AlphaResult::agreeing_trials() const {
  return static_cast<int>(std::count_if(trial_log.begin(), trial_log.end(),
                                        [&](const TrialRecord& t) { return t.alpha == alpha; }));
}

namespace {

bool has_kernel(std::span<const FieldPoint> points, std::span<const int> mults, int n, int degree,
                const PrimeField& field) {
  ConditionMatrix cm = build_condition_matrix(points, mults, n, degree, field);
  if (cm.matrix.rows() < cm.matrix.cols()) return true;
  return rank(std::move(cm.matrix)) < monomial_count(n + 1, degree);
}

struct Search {
  int alpha = 0;
  std::vector<std::uint32_t> witness;
};

Search search_alpha(std::span<const FieldPoint> points, std::span<const int> mults, int n, const PrimeField& field,
                    bool scan) {
  const int upper = expected_alpha(n, mults);
  int found = upper;
  if (scan) {
    for (int d = 1; d <= upper; ++d) {
      if (has_kernel(points, mults, n, d, field)) {
        found = d;
        break;
      }
    }
  } else {
    // Kernel at d implies kernel at d+1 (multiply by a linear form).
    int lo = 1, hi = upper;
    while (lo < hi) {
      int mid = lo + (hi - lo) / 2;
      if (has_kernel(points, mults, n, mid, field)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    found = lo;
  }
  RankKernel rk = rank_and_kernel(build_condition_matrix(points, mults, n, found, field).matrix);
  if (rk.kernel.empty()) throw Error("no kernel at the degree selected by the search");
  return {found, std::move(rk.kernel.front())};
}

std::vector<int> witness_orders(const std::vector<std::uint32_t>& witness, std::span<const FieldPoint> points, int n,
                                int degree, const PrimeField& field) {
  std::vector<int> out;
  out.reserve(points.size());
  for (const auto& pt : points) out.push_back(actual_multiplicity(witness, n, degree, pt, field));
  return out;
}

void require_nondegenerate(std::span<const int> mults) {
  if (std::all_of(mults.begin(), mults.end(), [](int m) { return m == 0; })) {
    throw DegenerateScheme("all multiplicities are zero");
  }
}

}  // namespace

AlphaResult alpha(const FatPointScheme& scheme, const AlphaOptions& options) {
  scheme.validate();
  require_nondegenerate(scheme.mults);
  const int n = scheme.config.n();
  std::vector<std::uint32_t> primes = options.primes;
  if (scheme.config.provenance() == Provenance::Random) primes = {scheme.config.prime()};
  if (primes.empty()) throw InvalidArgument("at least one prime is required");

  AlphaResult result;
  result.n = n;
  result.mults = scheme.mults;
  result.seed = scheme.config.seed();
  result.trials = 1;
  result.config = scheme.config;
  std::string failures;
  for (std::uint32_t prime : primes) {
    PrimeField field(prime);
    std::vector<FieldPoint> points;
    try {
      points = scheme.config.reduce(field);
    } catch (const InvalidArgument& e) {
      failures += std::string(" ") + e.what() + ";";
      continue;
    }
    Search s = search_alpha(points, scheme.mults, n, field, options.scan);
    result.primes_used.push_back(prime);
    result.trial_log.push_back({prime, scheme.config.seed(), s.alpha});
    if (s.alpha > result.alpha) {
      result.alpha = s.alpha;
      result.witness = std::move(s.witness);
      result.witness_prime = prime;
      result.actual_mults = witness_orders(result.witness, points, n, s.alpha, field);
    }
  }
  if (result.primes_used.empty()) throw InvalidArgument("configuration unusable modulo every prime:" + failures);
  return result;
}

AlphaResult alpha_generic(int n, const std::vector<int>& mults, int trials, const std::vector<std::uint32_t>& primes,
                          std::uint64_t seed, bool scan) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (primes.empty()) throw InvalidArgument("at least one prime is required");
  if (n < 1) throw InvalidArgument("ambient dimension n must be >= 1");
  for (int m : mults) {
    if (m < 0) throw InvalidArgument("multiplicities must be non-negative");
  }
  require_nondegenerate(mults);

  struct Task {
    std::uint32_t prime;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::uint32_t prime : primes) {
    for (int t = 0; t < trials; ++t) tasks.push_back({prime, seed + static_cast<std::uint64_t>(t)});
  }

  struct Outcome {
    PointConfiguration config;
    Search search;
  };
  auto run = [&](const Task& task) {
    PrimeField field(task.prime);
    PointConfiguration config = PointConfiguration::random(n, mults.size(), field, task.seed);
    Search s = search_alpha(config.field_points(), mults, n, field, scan);
    return Outcome{std::move(config), std::move(s)};
  };

  std::vector<Outcome> outcomes;
  outcomes.reserve(tasks.size());
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (workers == 1 || tasks.size() == 1) {
    for (const Task& task : tasks) outcomes.push_back(run(task));
  } else {
    // Results are collected in task order, so the merge below is deterministic.
    for (std::size_t start = 0; start < tasks.size(); start += workers) {
      std::vector<std::future<Outcome>> batch;
      for (std::size_t i = start; i < std::min(tasks.size(), start + workers); ++i) {
        batch.push_back(std::async(std::launch::async, run, std::cref(tasks[i])));
      }
      for (auto& f : batch) outcomes.push_back(f.get());
    }
  }

  AlphaResult result;
  result.n = n;
  result.mults = mults;
  result.seed = seed;
  result.trials = trials;
  result.primes_used = primes;
  std::size_t best = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    result.trial_log.push_back({tasks[i].prime, tasks[i].seed, outcomes[i].search.alpha});
    if (outcomes[i].search.alpha > outcomes[best].search.alpha) best = i;
  }
  Outcome& winner = outcomes[best];
  PrimeField field(tasks[best].prime);
  result.alpha = winner.search.alpha;
  result.witness = std::move(winner.search.witness);
  result.witness_prime = tasks[best].prime;
  result.actual_mults = witness_orders(result.witness, winner.config.field_points(), n, result.alpha, field);
  result.config = std::move(winner.config);
  return result;
}

KernelDimension kernel_dimension(std::span<const FieldPoint> points, std::span<const int> mults, int n, int degree,
                                 const PrimeField& field) {
  ConditionMatrix cm = build_condition_matrix(points, mults, n, degree, field);
  KernelDimension out;
  out.columns = cm.matrix.cols();
  out.conditions = cm.matrix.rows();
  out.rank = rank(std::move(cm.matrix));
  out.kernel = out.columns - out.rank;
  out.expected_kernel = out.columns > out.conditions ? out.columns - out.conditions : 0;
  return out;
}

DoublePointStatus ah_double_point_status(int n, int d, int r) {
  if (n < 2) throw InvalidArgument("double point classification needs n >= 2");
  if (d < 2) throw InvalidArgument("double point classification needs d >= 2");
  if (r < 1) throw InvalidArgument("double point classification needs r >= 1");
  if (d == 2 && r >= 2 && r <= n) return DoublePointStatus::Exceptional;
  struct Case {
    int n, d, r;
  };
  static constexpr Case kSporadic[] = {{2, 4, 5}, {3, 4, 9}, {4, 4, 14}, {4, 3, 7}};
  for (const Case& c : kSporadic) {
    if (c.n == n && c.d == d && c.r == r) return DoublePointStatus::Exceptional;
  }
  return DoublePointStatus::Regular;
}

nlohmann::json to_json(const AlphaResult& result) {
  nlohmann::json trial_alphas = nlohmann::json::array();
  for (const auto& t : result.trial_log) trial_alphas.push_back(t.alpha);
  return {
      {"n", result.n},
      {"r", result.mults.size()},
      {"mults", result.mults},
      {"alpha", result.alpha},
      {"actual_mults", result.actual_mults},
      {"primes", result.primes_used},
      {"seed", result.seed},
      {"trials", result.trials},
      {"witness_degree", result.alpha},
      {"witness_prime", result.witness_prime},
      {"provenance", to_string(result.config.provenance())},
      {"trial_alphas", trial_alphas},
      {"agreeing_trials", result.agreeing_trials()},
  };
}

nlohmann::json witness_json(const AlphaResult& result) { return result.witness; }

std::vector<int> uniform_mults(std::size_t r, int m) { return std::vector<int>(r, m); }

}  // namespace seshadri
