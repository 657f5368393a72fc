#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace seshadri {

/// Arbitrary-precision integer (GMP).
using Integer = mpz_class;

/// Arbitrary-precision rational. gmpxx keeps every result canonical:
/// denominator positive and coprime to the numerator.
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws InvalidArgument on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den = 1);

/// Parses "a", "-a" or "a/b".
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

/// Largest k with k^n <= value, for value >= 0.
Integer integer_root_floor(const Integer& value, unsigned long n);

/// True when value is a perfect square (value >= 0).
bool is_perfect_square(const Integer& value);

/// Exact integer n-th root when value is an n-th power.
bool exact_root(const Integer& value, unsigned long n, Integer& root);

Integer binomial(unsigned long top, unsigned long bottom);

/// Conversion guarded against overflow; throws InvalidArgument when out of range.
std::int64_t to_int64(const Integer& value);

/// Number of bits of |value| (0 for 0).
std::size_t bit_length(const Integer& value);

}  // namespace seshadri
