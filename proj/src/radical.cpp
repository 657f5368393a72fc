#include "seshadri/radical.hpp"

#include "seshadri/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>

namespace seshadri {

namespace {

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<bool> composite(kTrialDivisionBound + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= kTrialDivisionBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= kTrialDivisionBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

void add_factor(RadicalValue::FactorMap& into, const Integer& base, const Rational& exponent) {
  if (exponent == 0) return;
  auto [it, inserted] = into.emplace(base, exponent);
  if (!inserted) {
    it->second += exponent;
    if (it->second == 0) into.erase(it);
  }
}

// Splits base into small primes (recorded in `into`) and returns the
// cofactor, which has no prime factor <= kTrialDivisionBound.
Integer strip_small_primes(Integer base, const Rational& exponent, RadicalValue::FactorMap& into) {
  for (unsigned long p : small_primes()) {
    if (base == 1) break;
    if (Integer(p) * p > base) {
      // What remains is 1 or a prime.
      add_factor(into, base, exponent);
      return 1;
    }
    if (mpz_divisible_ui_p(base.get_mpz_t(), p) == 0) continue;
    unsigned long count = 0;
    while (mpz_divisible_ui_p(base.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(base.get_mpz_t(), base.get_mpz_t(), p);
      ++count;
    }
    add_factor(into, Integer(p), exponent * Rational(static_cast<long>(count)));
  }
  return base;
}

// Largest k with base == root^k.
unsigned long perfect_power_exponent(const Integer& base, Integer& root) {
  root = base;
  if (mpz_perfect_power_p(base.get_mpz_t()) == 0) return 1;
  std::size_t bits = bit_length(base);
  for (unsigned long k = bits; k >= 2; --k) {
    Integer r;
    if (mpz_root(r.get_mpz_t(), base.get_mpz_t(), k) != 0) {
      root = r;
      return k;
    }
  }
  return 1;
}

// Makes the large cofactors pairwise coprime and free of perfect powers.
void refine_large(std::vector<std::pair<Integer, Rational>>& large) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(large.begin(), large.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Integer, Rational>> merged;
    for (auto& entry : large) {
      if (entry.first == 1 || entry.second == 0) continue;
      if (!merged.empty() && merged.back().first == entry.first) {
        merged.back().second += entry.second;
      } else {
        merged.push_back(entry);
      }
    }
    std::erase_if(merged, [](const auto& e) { return e.second == 0; });
    large = std::move(merged);

    for (auto& entry : large) {
      Integer root;
      unsigned long k = perfect_power_exponent(entry.first, root);
      if (k > 1) {
        entry.first = root;
        entry.second *= Rational(static_cast<long>(k));
        changed = true;
      }
    }
    if (changed) continue;

    for (std::size_t i = 0; i < large.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < large.size() && !changed; ++j) {
        Integer g = gcd(large[i].first, large[j].first);
        if (g == 1) continue;
        Rational exp_g = large[i].second + large[j].second;
        large[i].first /= g;
        large[j].first /= g;
        large.emplace_back(g, exp_g);
        changed = true;
      }
    }
  }
}

Integer pow_integer(const Integer& base, const Integer& exponent) {
  Integer out;
  if (!mpz_fits_ulong_p(exponent.get_mpz_t())) throw BudgetExceeded("exponent too large to power out");
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), mpz_get_ui(exponent.get_mpz_t()));
  return out;
}

Integer lcm_of_denominators(const RadicalValue::FactorMap& factors) {
  Integer n = 1;
  for (const auto& [base, exponent] : factors) {
    mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), exponent.get_den_mpz_t());
  }
  return n;
}

// |value|^N as numerator/denominator integers, checked against the budget.
void power_out(const RadicalValue::FactorMap& factors, const Integer& n, std::size_t budget_bits,
               Integer& numerator, Integer& denominator) {
  Integer bits = 0;
  for (const auto& [base, exponent] : factors) {
    Rational scaled = exponent * Rational(n);
    bits += abs(scaled.get_num()) * static_cast<unsigned long>(bit_length(base));
  }
  if (bits > Integer(static_cast<unsigned long>(budget_bits))) {
    throw BudgetExceeded("radical comparison needs " + to_string(bits) + " bits, budget is " +
                         std::to_string(budget_bits));
  }
  numerator = 1;
  denominator = 1;
  for (const auto& [base, exponent] : factors) {
    Rational scaled = exponent * Rational(n);
    Integer e = scaled.get_num();
    if (e > 0) {
      numerator *= pow_integer(base, e);
    } else {
      denominator *= pow_integer(base, -e);
    }
  }
}

std::string integer_text(const Integer& v) { return to_string(v); }

}  // namespace

RadicalValue RadicalValue::build(int sign, std::vector<std::pair<Integer, Rational>> raw) {
  RadicalValue out;
  if (sign == 0) return out;
  out.sign_ = sign > 0 ? 1 : -1;
  std::vector<std::pair<Integer, Rational>> large;
  for (auto& [base, exponent] : raw) {
    if (base <= 0) throw InvalidArgument("radical base must be positive");
    exponent.canonicalize();
    if (exponent == 0 || base == 1) continue;
    Integer rest = strip_small_primes(base, exponent, out.factors_);
    if (rest != 1) large.emplace_back(rest, exponent);
  }
  refine_large(large);
  for (auto& [base, exponent] : large) add_factor(out.factors_, base, exponent);
  return out;
}

RadicalValue::RadicalValue(const Rational& value) {
  int s = sgn(value);
  if (s == 0) return;
  *this = build(s, {{abs(value.get_num()), Rational(1)}, {value.get_den(), Rational(-1)}});
}

RadicalValue RadicalValue::power(const Rational& base, const Rational& exponent) {
  return pow(RadicalValue(base), exponent);
}

RadicalValue RadicalValue::from_factors(int sign, const std::vector<std::pair<Rational, Rational>>& factors) {
  std::vector<std::pair<Integer, Rational>> raw;
  for (const auto& [base, exponent] : factors) {
    if (base <= 0) throw InvalidArgument("radical base must be a positive rational");
    raw.emplace_back(base.get_num(), exponent);
    raw.emplace_back(base.get_den(), -exponent);
  }
  return build(sign, std::move(raw));
}

bool RadicalValue::is_rational() const noexcept {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const auto& f) { return f.second.get_den() == 1; });
}

Rational RadicalValue::to_rational() const {
  if (!is_rational()) throw InvalidArgument("radical value " + to_string(*this) + " is irrational");
  Integer num = 1, den = 1;
  for (const auto& [base, exponent] : factors_) {
    Integer e = exponent.get_num();
    if (e > 0) {
      num *= pow_integer(base, e);
    } else {
      den *= pow_integer(base, -e);
    }
  }
  return make_rational(num * sign_, den);
}

double RadicalValue::to_double() const {
  if (sign_ == 0) return 0.0;
  double log_sum = 0.0;
  for (const auto& [base, exponent] : factors_) {
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, base.get_mpz_t());
    double log_base = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
    log_sum += exponent.get_d() * log_base;
  }
  return sign_ * std::exp(log_sum);
}

Integer RadicalValue::exponent_denominator() const { return lcm_of_denominators(factors_); }

RadicalValue radical_mul(const RadicalValue& a, const RadicalValue& b) {
  if (a.sign_ == 0 || b.sign_ == 0) return {};
  std::vector<std::pair<Integer, Rational>> raw;
  raw.reserve(a.factors_.size() + b.factors_.size());
  for (const auto& f : a.factors_) raw.emplace_back(f);
  for (const auto& f : b.factors_) raw.emplace_back(f);
  return RadicalValue::build(a.sign_ * b.sign_, std::move(raw));
}

RadicalValue radical_inverse(const RadicalValue& a) {
  if (a.sign_ == 0) throw InvalidArgument("inverse of zero radical");
  RadicalValue out = a;
  for (auto& [base, exponent] : out.factors_) exponent = -exponent;
  return out;
}

RadicalValue pow(const RadicalValue& a, const Rational& exponent_in) {
  Rational exponent = exponent_in;
  exponent.canonicalize();
  if (a.sign_ == 0) {
    if (exponent <= 0) throw InvalidArgument("non-positive power of zero");
    return {};
  }
  int sign = 1;
  if (a.sign_ < 0) {
    if (exponent.get_den() % 2 == 0) throw InvalidArgument("even root of a negative radical");
    if (exponent.get_num() % 2 != 0) sign = -1;
  }
  std::vector<std::pair<Integer, Rational>> raw;
  for (const auto& [base, e] : a.factors_) raw.emplace_back(base, e * exponent);
  return RadicalValue::build(sign, std::move(raw));
}

RadicalValue nth_power(const RadicalValue& a, unsigned long n) {
  if (n == 0) throw InvalidArgument("nth_power requires n >= 1");
  return pow(a, Rational(n));
}

RadicalValue nth_root(const RadicalValue& a, unsigned long n) {
  if (n == 0) throw InvalidArgument("nth_root requires n >= 1");
  return pow(a, make_rational(1, n));
}

std::strong_ordering radical_cmp(const RadicalValue& a, const RadicalValue& b, std::size_t budget_bits) {
  if (a.sign() != b.sign()) return a.sign() <=> b.sign();
  if (a.sign() == 0) return std::strong_ordering::equal;
  if (a == b) return std::strong_ordering::equal;

  // |a| / |b| as a single factor map; bases need not be coprime here.
  RadicalValue::FactorMap ratio = a.factors();
  for (const auto& [base, exponent] : b.factors()) add_factor(ratio, base, -exponent);
  Integer n = lcm_of_denominators(ratio);
  Integer num, den;
  power_out(ratio, n, budget_bits, num, den);
  std::strong_ordering magnitude = cmp(num, den) <=> 0;
  if (a.sign() > 0) return magnitude;
  return 0 <=> (cmp(num, den));
}

Integer radical_floor(const RadicalValue& a, std::size_t budget_bits) {
  if (a.sign() == 0) return 0;
  if (a.sign() < 0) return -radical_ceil(-a, budget_bits);
  Integer n = a.exponent_denominator();
  Integer num, den;
  power_out(a.factors(), n, budget_bits, num, den);
  Integer q = num / den;
  return integer_root_floor(q, mpz_get_ui(n.get_mpz_t()));
}

Integer radical_ceil(const RadicalValue& a, std::size_t budget_bits) {
  if (a.sign() == 0) return 0;
  if (a.sign() < 0) return -radical_floor(-a, budget_bits);
  Integer n = a.exponent_denominator();
  Integer num, den;
  power_out(a.factors(), n, budget_bits, num, den);
  unsigned long nn = mpz_get_ui(n.get_mpz_t());
  Integer k = integer_root_floor(num / den, nn);
  if (pow_integer(k, n) * den == num) return k;
  return k + 1;
}

std::string to_string(const RadicalValue& a) {
  if (a.sign() == 0) return "0";
  Rational coefficient = 1;
  std::map<Integer, std::vector<std::pair<Integer, Integer>>> groups;  // q -> (base, p)
  for (const auto& [base, exponent] : a.factors()) {
    Integer whole = floor(exponent);
    Rational frac = exponent - Rational(whole);
    if (whole > 0) {
      coefficient *= Rational(pow_integer(base, whole));
    } else if (whole < 0) {
      coefficient /= Rational(pow_integer(base, -whole));
    }
    if (frac != 0) groups[frac.get_den()].emplace_back(base, frac.get_num());
  }
  std::vector<std::string> items;
  if (coefficient.get_num() != 1 || groups.empty()) items.push_back(integer_text(coefficient.get_num()));
  for (const auto& [q, members] : groups) {
    if (members.size() == 1) {
      items.push_back(integer_text(members[0].first) + "^(" + integer_text(members[0].second) + "/" +
                      integer_text(q) + ")");
    } else {
      Integer combined = 1;
      for (const auto& [base, p] : members) combined *= pow_integer(base, p);
      items.push_back(integer_text(combined) + "^(1/" + integer_text(q) + ")");
    }
  }
  std::string out = a.sign() < 0 ? "-" : "";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += "*";
    out += items[i];
  }
  if (coefficient.get_den() != 1) out += "/" + integer_text(coefficient.get_den());
  return out;
}

namespace {

class RadicalParser {
 public:
  explicit RadicalParser(std::string_view text) : text_(text) {}

  RadicalValue parse() {
    RadicalValue value = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return value;
  }

 private:
  RadicalValue expression() {
    skip_space();
    bool negate = false;
    if (peek() == '-') {
      ++pos_;
      negate = true;
    }
    RadicalValue value = term();
    for (;;) {
      skip_space();
      char c = peek();
      if (c == '*') {
        ++pos_;
        value = value * term();
      } else if (c == '/') {
        ++pos_;
        RadicalValue divisor = term();
        if (divisor.is_zero()) fail("division by zero");
        value = value / divisor;
      } else {
        break;
      }
    }
    return negate ? -value : value;
  }

  RadicalValue term() {
    RadicalValue base = primary();
    skip_space();
    if (peek() != '^') return base;
    ++pos_;
    return pow(base, exponent());
  }

  RadicalValue primary() {
    skip_space();
    if (peek() == '(') {
      ++pos_;
      RadicalValue inner = expression();
      expect(')');
      return inner;
    }
    return RadicalValue(Rational(integer()));
  }

  Rational exponent() {
    skip_space();
    if (peek() == '(') {
      ++pos_;
      skip_space();
      bool negative = false;
      if (peek() == '-') {
        ++pos_;
        negative = true;
      }
      Integer num = integer();
      Integer den = 1;
      skip_space();
      if (peek() == '/') {
        ++pos_;
        den = integer();
        if (den == 0) fail("zero exponent denominator");
      }
      expect(')');
      Rational e = make_rational(num, den);
      return negative ? Rational(-e) : e;
    }
    bool negative = false;
    if (peek() == '-') {
      ++pos_;
      negative = true;
    }
    Integer num = integer();
    return Rational(negative ? Integer(-num) : num);
  }

  Integer integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse radical '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                     ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

nlohmann::json integer_json(const Integer& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t()));
  return to_string(v);
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()), 10);
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if (q.get_den() != 1) throw ParseError("expected an integer, got " + j.get<std::string>());
    return q.get_num();
  }
  throw ParseError("expected an integer in radical JSON");
}

}  // namespace

RadicalValue parse_radical(std::string_view text) { return RadicalParser(text).parse(); }

nlohmann::json to_json(const RadicalValue& a) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& [base, exponent] : a.factors()) {
    factors.push_back({{"base_num", integer_json(base)},
                       {"base_den", 1},
                       {"exp_num", integer_json(exponent.get_num())},
                       {"exp_den", integer_json(exponent.get_den())}});
  }
  return {{"sign", a.sign()}, {"factors", std::move(factors)}};
}

RadicalValue radical_from_json(const nlohmann::json& j) {
  try {
    int sign = j.at("sign").get<int>();
    if (sign < -1 || sign > 1) throw ParseError("radical sign must be -1, 0 or 1");
    std::vector<std::pair<Rational, Rational>> factors;
    for (const auto& f : j.at("factors")) {
      Rational base = make_rational(integer_from_json(f.at("base_num")), integer_from_json(f.at("base_den")));
      Rational exponent = make_rational(integer_from_json(f.at("exp_num")), integer_from_json(f.at("exp_den")));
      factors.emplace_back(base, exponent);
    }
    if (sign == 0 && !factors.empty()) throw ParseError("zero radical with factors");
    return RadicalValue::from_factors(sign, factors);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed radical JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("malformed radical JSON: ") + e.what());
  }
}

}  // namespace seshadri
