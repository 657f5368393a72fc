#pragma once

#include "seshadri/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

namespace seshadri {

/// Five fixed 31-bit primes used for reproducible multi-prime runs.
inline constexpr std::array<std::uint32_t, 5> kDefaultPrimes = {
    2147483647u, 2147483629u, 2147483587u, 2147483579u, 2147483563u};

std::vector<std::uint32_t> default_primes(std::size_t count = kDefaultPrimes.size());

/// Deterministic Miller-Rabin for 32-bit inputs.
bool is_prime_u32(std::uint32_t value);

/// Arithmetic modulo a prime 2^30 < p < 2^31. Residues are plain uint32_t
/// values in [0, p); the field object only carries the modulus.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t modulus);

  std::uint32_t modulus() const noexcept { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : a + (p_ - b);
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t pow(std::uint32_t base, std::uint64_t exponent) const noexcept;
  /// Inverse by the extended Euclidean algorithm; throws on zero.
  std::uint32_t inv(std::uint32_t a) const;

  std::uint32_t from_int(std::int64_t value) const noexcept;
  std::uint32_t from_integer(const Integer& value) const;
  /// Throws InvalidArgument when the denominator vanishes mod p.
  std::uint32_t from_rational(const Rational& value) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

/// A residue tagged with its modulus. Mixing moduli throws InvalidArgument.
class FieldElement {
 public:
  FieldElement(std::uint32_t residue, const PrimeField& field);

  std::uint32_t residue() const noexcept { return residue_; }
  std::uint32_t modulus() const noexcept { return field_.modulus(); }

  FieldElement operator+(const FieldElement& other) const;
  FieldElement operator-(const FieldElement& other) const;
  FieldElement operator*(const FieldElement& other) const;
  FieldElement operator/(const FieldElement& other) const;
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t exponent) const;

  bool operator==(const FieldElement& other) const {
    return residue_ == other.residue_ && field_ == other.field_;
  }

 private:
  void check_same(const FieldElement& other) const;

  std::uint32_t residue_;
  PrimeField field_;
};

}  // namespace seshadri
