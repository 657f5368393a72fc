#pragma once

#include "seshadri/rational.hpp"

#include <nlohmann/json.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace seshadri {

/// Default bit budget for the integers produced while powering out a
/// radical comparison.
inline constexpr std::size_t kDefaultComparisonBudgetBits = std::size_t{1} << 16;

/// Integer bases up to this bound are factored completely by trial division.
inline constexpr unsigned long kTrialDivisionBound = 1000000;

/// An exact real number sign * prod base_j^(exponent_j) with integer bases
/// and rational exponents.
///
/// Canonical form: every base is > 1 and is either a prime or an opaque
/// cofactor with no prime factor below kTrialDivisionBound that is not a
/// perfect power; bases are pairwise coprime (hence multiplicatively
/// independent) and no exponent is zero. A rational c is stored as the
/// factorization of c. Zero has sign 0 and no factors.
class RadicalValue {
 public:
  using FactorMap = std::map<Integer, Rational>;

  RadicalValue() = default;
  RadicalValue(const Rational& value);  // NOLINT(google-explicit-constructor)
  RadicalValue(long value) : RadicalValue(Rational(value)) {}  // NOLINT

  /// base^exponent. base must be positive unless the exponent is an integer.
  static RadicalValue power(const Rational& base, const Rational& exponent);

  /// sign * prod base^exponent for arbitrary positive rational bases.
  static RadicalValue from_factors(int sign, const std::vector<std::pair<Rational, Rational>>& factors);

  int sign() const noexcept { return sign_; }
  const FactorMap& factors() const noexcept { return factors_; }

  bool is_zero() const noexcept { return sign_ == 0; }
  bool is_rational() const noexcept;
  /// Throws InvalidArgument when some exponent is not an integer.
  Rational to_rational() const;
  double to_double() const;

  /// Lowest common denominator of the exponents (1 for rationals).
  Integer exponent_denominator() const;

  bool operator==(const RadicalValue&) const = default;

 private:
  friend RadicalValue radical_mul(const RadicalValue&, const RadicalValue&);
  friend RadicalValue radical_inverse(const RadicalValue&);
  friend RadicalValue pow(const RadicalValue&, const Rational&);

  static RadicalValue build(int sign, std::vector<std::pair<Integer, Rational>> raw);

  int sign_ = 0;
  FactorMap factors_;
};

RadicalValue radical_mul(const RadicalValue& a, const RadicalValue& b);
/// Throws InvalidArgument for zero.
RadicalValue radical_inverse(const RadicalValue& a);

inline RadicalValue operator*(const RadicalValue& a, const RadicalValue& b) { return radical_mul(a, b); }
inline RadicalValue operator/(const RadicalValue& a, const RadicalValue& b) {
  return radical_mul(a, radical_inverse(b));
}
inline RadicalValue operator-(const RadicalValue& a) { return radical_mul(a, RadicalValue(-1)); }

/// a^exponent. Even roots of negative values throw InvalidArgument.
RadicalValue pow(const RadicalValue& a, const Rational& exponent);
RadicalValue nth_power(const RadicalValue& a, unsigned long n);
RadicalValue nth_root(const RadicalValue& a, unsigned long n);

/// Exact comparison: clears exponent denominators to a common N and
/// compares the integer N-th powers. Throws BudgetExceeded when those
/// integers would need more than budget_bits bits.
std::strong_ordering radical_cmp(const RadicalValue& a, const RadicalValue& b,
                                 std::size_t budget_bits = kDefaultComparisonBudgetBits);

inline bool radical_less(const RadicalValue& a, const RadicalValue& b) {
  return radical_cmp(a, b) == std::strong_ordering::less;
}

Integer radical_floor(const RadicalValue& a, std::size_t budget_bits = kDefaultComparisonBudgetBits);
Integer radical_ceil(const RadicalValue& a, std::size_t budget_bits = kDefaultComparisonBudgetBits);

/// Human-readable canonical text, e.g. "4*3^(1/2)/11" or "10^(1/2)/10".
std::string to_string(const RadicalValue& a);

/// Accepts products and quotients of integers, parenthesized
/// subexpressions and powers with rational exponents:
/// "2", "-3/4", "10^(-1/2)", "(12/121)^(1/2)", "2*3^(1/2)/11".
RadicalValue parse_radical(std::string_view text);

/// {"sign": s, "factors": [{"base_num", "base_den", "exp_num", "exp_den"}, ...]}
/// with factors in ascending base order. Integers that fit in 64 bits are
/// JSON numbers, larger ones decimal strings.
nlohmann::json to_json(const RadicalValue& a);
RadicalValue radical_from_json(const nlohmann::json& j);

}  // namespace seshadri
