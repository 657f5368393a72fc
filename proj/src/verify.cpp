#include "seshadri/verify.hpp"

#include "seshadri/bounds.hpp"
#include "seshadri/error.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>

namespace seshadri {

nlohmann::json to_json(const SuiteReport& report, bool include_timing) {
  nlohmann::json out = {{"suite", report.name},
                        {"attempted", report.attempted},
                        {"passed", report.passed},
                        {"ok", report.ok()},
                        {"cases", report.cases},
                        {"counterexamples", report.counterexamples}};
  if (include_timing) out["wall_seconds"] = report.wall_seconds;
  return out;
}

namespace {

using Poly = std::map<Exponent, std::uint32_t>;

Poly poly_mul(const Poly& a, const Poly& b, const PrimeField& field) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      std::uint32_t& slot = out[e];
      slot = field.add(slot, field.mul(ca, cb));
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

// F(T y) for every degree-d monomial F = x^a, where x_pivot = P_pivot y0 and
// x_k = P_k y0 + y_(k-th non-pivot slot) otherwise.
class Substitution {
 public:
  Substitution(const FieldPoint& point, int degree, const PrimeField& field) : field_(field) {
    const std::size_t nv = point.size();
    std::size_t pivot = nv;
    for (std::size_t k = 0; k < nv; ++k) {
      if (point[k] != 0) {
        pivot = k;
        break;
      }
    }
    if (pivot == nv) throw InvalidArgument("point has all coordinates zero");
    powers_.resize(nv);
    std::size_t slot = 1;
    for (std::size_t k = 0; k < nv; ++k) {
      Poly linear;
      Exponent e0(nv, 0);
      e0[0] = 1;
      if (point[k] != 0) linear[e0] = point[k];
      if (k != pivot) {
        Exponent ek(nv, 0);
        ek[slot++] = 1;
        linear[ek] = 1;
      }
      Poly one;
      one[Exponent(nv, 0)] = 1;
      powers_[k].push_back(one);
      for (int e = 1; e <= degree; ++e) powers_[k].push_back(poly_mul(powers_[k].back(), linear, field));
    }
  }

  Poly image(const Exponent& a) const {
    Poly out = powers_[0][a[0]];
    for (std::size_t k = 1; k < a.size(); ++k) out = poly_mul(out, powers_[k][a[k]], field_);
    return out;
  }

 private:
  PrimeField field_;
  std::vector<std::vector<Poly>> powers_;
};

// Rows of the vanishing conditions rebuilt from explicit substitutions.
ModMatrix substitution_matrix(std::span<const FieldPoint> points, std::span<const int> mults, int n, int degree,
                              const PrimeField& field) {
  const auto columns = monomials(n + 1, degree);
  std::size_t rows = 0;
  for (int m : mults) {
    for (int j = 0; j < m; ++j) rows += monomial_count(n, j);
  }
  ModMatrix out(rows, columns.size(), field);
  std::size_t row0 = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (mults[i] == 0) continue;
    Substitution sub(points[i], degree, field);
    std::map<Exponent, std::size_t> row_of;
    std::size_t row = row0;
    for (int j = 0; j < mults[i]; ++j) {
      for (const Exponent& beta : monomials(n, j)) {
        Exponent gamma;
        gamma.push_back(degree - j);
        gamma.insert(gamma.end(), beta.begin(), beta.end());
        row_of.emplace(std::move(gamma), row++);
      }
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
      for (const auto& [gamma, coeff] : sub.image(columns[c])) {
        auto it = row_of.find(gamma);
        if (it != row_of.end()) out(it->second, c) = coeff;
      }
    }
    row0 = row;
  }
  return out;
}

struct WitnessCheck {
  std::vector<int> orders;
  std::optional<std::size_t> violated_row;
};

WitnessCheck check_witness(std::span<const std::uint32_t> witness, std::span<const FieldPoint> points,
                           std::span<const int> mults, int n, int degree, const PrimeField& field) {
  const auto columns = monomials(n + 1, degree);
  WitnessCheck out;
  std::size_t row_base = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Substitution sub(points[i], degree, field);
    Poly total;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (witness[c] == 0) continue;
      for (const auto& [gamma, coeff] : sub.image(columns[c])) {
        std::uint32_t& slot = total[gamma];
        slot = field.add(slot, field.mul(coeff, witness[c]));
      }
    }
    int order = degree + 1;
    for (const auto& [gamma, coeff] : total) {
      if (coeff != 0) order = std::min(order, degree - gamma[0]);
    }
    out.orders.push_back(order);
    if (order < mults[i] && !out.violated_row) {
      // Locate the first nonzero condition row of this point.
      std::size_t row = row_base;
      for (int j = 0; j < mults[i] && !out.violated_row; ++j) {
        for (const Exponent& beta : monomials(n, j)) {
          Exponent gamma;
          gamma.push_back(degree - j);
          gamma.insert(gamma.end(), beta.begin(), beta.end());
          auto it = total.find(gamma);
          if (it != total.end() && it->second != 0) {
            out.violated_row = row;
            break;
          }
          ++row;
        }
      }
    }
    for (int j = 0; j < mults[i]; ++j) row_base += monomial_count(n, j);
  }
  return out;
}

bool kernel_free(std::span<const FieldPoint> points, std::span<const int> mults, int n, int degree,
                 const PrimeField& field) {
  if (degree < 1) return true;
  ModMatrix m = substitution_matrix(points, mults, n, degree, field);
  return rank(std::move(m)) == monomial_count(n + 1, degree);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Certificate certify(const AlphaResult& result, const VerifyConfig& config) {
  Certificate cert;
  const int n = result.n;
  if (result.witness.empty() || result.witness_prime == 0) {
    cert.detail = "result carries no witness";
    return cert;
  }
  if (std::all_of(result.witness.begin(), result.witness.end(), [](std::uint32_t x) { return x == 0; })) {
    cert.detail = "witness is the zero form";
    return cert;
  }
  if (result.witness.size() != monomial_count(n + 1, result.alpha)) {
    cert.detail = "witness length does not match degree alpha";
    return cert;
  }
  PrimeField field(result.witness_prime);
  std::vector<FieldPoint> points;
  try {
    points = result.config.reduce(field);
  } catch (const InvalidArgument& e) {
    cert.detail = std::string("configuration not usable modulo the witness prime: ") + e.what();
    return cert;
  }

  WitnessCheck check = check_witness(result.witness, points, result.mults, n, result.alpha, field);
  if (check.violated_row) {
    cert.violated_condition = check.violated_row;
    cert.detail = "witness violates vanishing condition " + std::to_string(*check.violated_row);
    return cert;
  }
  if (check.orders != result.actual_mults) {
    cert.detail = "recorded actual multiplicities differ from the substituted witness";
    return cert;
  }
  if (!kernel_free(points, result.mults, n, result.alpha - 1, field)) {
    cert.detail = "a nonzero form exists in degree alpha-1 modulo " + std::to_string(field.modulus());
    return cert;
  }

  if (result.config.provenance() == Provenance::Explicit) {
    std::vector<std::uint32_t> candidates = config.primes;
    for (std::uint32_t p : kDefaultPrimes) candidates.push_back(p);
    bool second_done = false;
    for (std::uint32_t p : candidates) {
      if (p == result.witness_prime) continue;
      PrimeField other(p);
      std::vector<FieldPoint> reduced;
      try {
        reduced = result.config.reduce(other);
      } catch (const InvalidArgument&) {
        continue;
      }
      if (!kernel_free(reduced, result.mults, n, result.alpha - 1, other)) {
        cert.detail = "a nonzero form exists in degree alpha-1 modulo " + std::to_string(p);
        return cert;
      }
      if (kernel_free(reduced, result.mults, n, result.alpha, other)) {
        cert.detail = "no form of degree alpha modulo " + std::to_string(p);
        return cert;
      }
      second_done = true;
      break;
    }
    if (!second_done) {
      cert.detail = "no second prime available for the explicit configuration";
      return cert;
    }
  }
  cert.ok = true;
  cert.detail = "certified";
  return cert;
}

SuiteReport suite_remark_alpha(int n, const std::vector<int>& r_list, int m_max, const VerifyConfig& config) {
  auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.name = "remark-alpha";
  for (int r : r_list) {
    Integer root;
    if (r < 1 || !exact_root(Integer(r), static_cast<unsigned long>(n), root)) {
      throw InvalidArgument("remark-alpha suite needs r to be an n-th power, got r=" + std::to_string(r));
    }
    const int s = static_cast<int>(root.get_si());
    const RadicalValue eps_power = choodnovsky_exact(n, s).as_power().value;
    for (int m = 1; m <= m_max; ++m) {
      auto mults = uniform_mults(static_cast<std::size_t>(r), m);
      AlphaResult res = alpha_generic(n, mults, config.trials, config.primes, config.seed);
      Integer floor_value = remark_alpha_floor(eps_power, mults);
      Certificate cert = certify(res, config);
      nlohmann::json record = {{"n", n},
                               {"r", r},
                               {"s", s},
                               {"m", m},
                               {"alpha", res.alpha},
                               {"floor", to_string(floor_value)},
                               {"equality", Integer(res.alpha) == floor_value},
                               {"certified", cert.ok}};
      ++report.attempted;
      if (Integer(res.alpha) >= floor_value && cert.ok) {
        ++report.passed;
      } else {
        record["detail"] = cert.detail;
        report.counterexamples.push_back(record);
      }
      report.cases.push_back(std::move(record));
    }
  }
  report.wall_seconds = seconds_since(start);
  return report;
}

std::vector<SemicontinuityCase> default_semicontinuity_cases() {
  auto pts = [](std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<RationalPoint> out;
    for (const auto& row : rows) {
      RationalPoint p;
      for (long x : row) p.emplace_back(x);
      out.push_back(std::move(p));
    }
    return out;
  };
  std::vector<SemicontinuityCase> cases;
  cases.push_back({"collinear-3",
                   {PointConfiguration::from_rational(2, pts({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), true), {1, 1, 1}}});
  cases.push_back({"collinear-5",
                   {PointConfiguration::from_rational(2, pts({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 2, 0}, {1, 3, 0}}), true),
                    {1, 1, 1, 1, 1}}});
  cases.push_back({"three-collinear-plus-one-double",
                   {PointConfiguration::from_rational(2, pts({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}}), true),
                    {2, 2, 2, 2}}});
  cases.push_back(
      {"conic-6",
       {PointConfiguration::from_rational(2, pts({{1, 0, 0}, {1, 1, 1}, {1, 2, 4}, {1, 3, 9}, {1, 4, 16}, {0, 0, 1}}),
                                          true),
        {1, 1, 1, 1, 1, 1}}});
  cases.push_back(
      {"coplanar-4-in-P3",
       {PointConfiguration::from_rational(3, pts({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 1, 0}}), true),
        {1, 1, 1, 1}}});
  return cases;
}

SuiteReport suite_semicontinuity(const std::vector<SemicontinuityCase>& cases, const VerifyConfig& config) {
  auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.name = "semicontinuity";
  for (const auto& c : cases) {
    AlphaOptions options;
    options.primes = config.primes;
    AlphaResult special = alpha(c.special, options);
    AlphaResult generic = alpha_generic(c.special.config.n(), c.special.mults, config.trials, config.primes, config.seed);
    nlohmann::json record = {{"case", c.name},
                             {"n", c.special.config.n()},
                             {"mults", c.special.mults},
                             {"alpha_special", special.alpha},
                             {"alpha_generic", generic.alpha}};
    ++report.attempted;
    if (special.alpha <= generic.alpha) {
      ++report.passed;
    } else {
      report.counterexamples.push_back(record);
    }
    report.cases.push_back(std::move(record));
  }
  report.wall_seconds = seconds_since(start);
  return report;
}

std::vector<MultPair> sample_mult_pairs(int r, int m_max, int count, std::uint64_t seed) {
  if (r < 1 || m_max < 1) throw InvalidArgument("sample_mult_pairs needs r >= 1 and m_max >= 1");
  std::mt19937_64 engine(seed ^ 0x5eed5eedull);
  auto draw = [&](int hi) { return static_cast<int>(engine() % static_cast<std::uint64_t>(hi + 1)); };
  auto nonzero = [&](std::vector<int>& m) {
    if (std::all_of(m.begin(), m.end(), [](int x) { return x == 0; })) m[0] = 1;
  };
  std::vector<MultPair> out;
  std::vector<int> base(static_cast<std::size_t>(r), 1);
  out.emplace_back(base, base);
  for (int i = 1; i < count; ++i) {
    std::vector<int> a(static_cast<std::size_t>(r)), b(static_cast<std::size_t>(r));
    for (auto& x : a) x = draw(m_max);
    nonzero(a);
    if (i % 2 == 1) {
      for (std::size_t k = 0; k < a.size(); ++k) b[k] = a[k] + draw(m_max - a[k]);
    } else {
      for (auto& x : b) x = draw(m_max);
    }
    nonzero(b);
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

SuiteReport suite_alpha_axioms(int n, int r, const std::vector<MultPair>& m_samples, const VerifyConfig& config) {
  auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.name = "axioms";
  auto generic = [&](const std::vector<int>& m) {
    return alpha_generic(n, m, config.trials, config.primes, config.seed).alpha;
  };
  for (const auto& [a, b] : m_samples) {
    if (a.size() != static_cast<std::size_t>(r) || b.size() != static_cast<std::size_t>(r)) {
      throw InvalidArgument("multiplicity sample length differs from r");
    }
    std::vector<int> sum(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
    const int alpha_a = generic(a);
    const int alpha_b = generic(b);
    const int alpha_sum = generic(sum);
    const bool comparable = std::equal(a.begin(), a.end(), b.begin(), [](int x, int y) { return x <= y; });

    auto check = [&](const std::string& property, bool holds, nlohmann::json detail) {
      detail["property"] = property;
      detail["m"] = a;
      detail["m_prime"] = b;
      ++report.attempted;
      if (holds) {
        ++report.passed;
      } else {
        report.counterexamples.push_back(detail);
      }
      report.cases.push_back(std::move(detail));
    };
    if (comparable) {
      check("monotonicity", alpha_a <= alpha_b, {{"alpha_m", alpha_a}, {"alpha_m_prime", alpha_b}});
    }
    check("subadditivity", alpha_sum <= alpha_a + alpha_b,
          {{"alpha_sum", alpha_sum}, {"alpha_m", alpha_a}, {"alpha_m_prime", alpha_b}});
    const int expected = expected_alpha(n, a);
    check("counting-bound", alpha_a <= expected, {{"alpha_m", alpha_a}, {"expected_alpha", expected}});
  }
  report.wall_seconds = seconds_since(start);
  return report;
}

}  // namespace seshadri
