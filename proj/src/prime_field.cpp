#include "seshadri/prime_field.hpp"

#include "seshadri/error.hpp"

#include <string>

namespace seshadri {

std::vector<std::uint32_t> default_primes(std::size_t count) {
  if (count == 0 || count > kDefaultPrimes.size()) {
    throw InvalidArgument("default prime count must be in [1, 5]");
  }
  return {kDefaultPrimes.begin(), kDefaultPrimes.begin() + static_cast<std::ptrdiff_t>(count)};
}

namespace {

std::uint64_t powmod64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t small : {2u, 3u, 5u, 7u}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Bases 2, 7, 61 are deterministic below 4,759,123,141.
  for (std::uint64_t a : {2ull, 7ull, 61ull}) {
    if (a % n == 0) continue;
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t modulus) : p_(modulus) {
  if (modulus <= (1u << 30) || modulus >= (1u << 31)) {
    throw InvalidArgument("prime modulus must lie in (2^30, 2^31), got " + std::to_string(modulus));
  }
  if (!is_prime_u32(modulus)) {
    throw InvalidArgument("modulus " + std::to_string(modulus) + " is not prime");
  }
}

std::uint32_t PrimeField::pow(std::uint32_t base, std::uint64_t exponent) const noexcept {
  return static_cast<std::uint32_t>(powmod64(base, exponent, p_));
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a == 0) throw InvalidArgument("inverse of zero in prime field");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<std::uint32_t>(t);
}

std::uint32_t PrimeField::from_int(std::int64_t value) const noexcept {
  std::int64_t r = value % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t PrimeField::from_integer(const Integer& value) const {
  return static_cast<std::uint32_t>(mpz_fdiv_ui(value.get_mpz_t(), p_));
}

std::uint32_t PrimeField::from_rational(const Rational& value) const {
  std::uint32_t den = static_cast<std::uint32_t>(mpz_fdiv_ui(value.get_den_mpz_t(), p_));
  if (den == 0) {
    throw InvalidArgument("denominator of " + to_string(value) + " vanishes modulo " +
                          std::to_string(p_));
  }
  std::uint32_t num = static_cast<std::uint32_t>(mpz_fdiv_ui(value.get_num_mpz_t(), p_));
  return mul(num, inv(den));
}

FieldElement::FieldElement(std::uint32_t residue, const PrimeField& field)
    : residue_(residue % field.modulus()), field_(field) {}

void FieldElement::check_same(const FieldElement& other) const {
  if (!(field_ == other.field_)) throw InvalidArgument("field elements with different moduli");
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
  check_same(other);
  return {field_.add(residue_, other.residue_), field_};
}

FieldElement FieldElement::operator-(const FieldElement& other) const {
  check_same(other);
  return {field_.sub(residue_, other.residue_), field_};
}

FieldElement FieldElement::operator*(const FieldElement& other) const {
  check_same(other);
  return {field_.mul(residue_, other.residue_), field_};
}

FieldElement FieldElement::operator/(const FieldElement& other) const {
  check_same(other);
  return {field_.mul(residue_, field_.inv(other.residue_)), field_};
}

FieldElement FieldElement::operator-() const { return {field_.neg(residue_), field_}; }

FieldElement FieldElement::inverse() const { return {field_.inv(residue_), field_}; }

FieldElement FieldElement::pow(std::uint64_t exponent) const {
  return {field_.pow(residue_, exponent), field_};
}

}  // namespace seshadri
