#include "seshadri/rational.hpp"

#include "seshadri/error.hpp"

#include <limits>

namespace seshadri {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

Integer parse_integer(std::string_view text) {
  if (text.empty()) throw ParseError("empty integer literal");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw ParseError("bad integer literal '" + std::string(text) + "'");
  for (std::size_t k = i; k < text.size(); ++k) {
    if (text[k] < '0' || text[k] > '9') {
      throw ParseError("bad integer literal '" + std::string(text) + "'");
    }
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return Integer(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return make_rational(num, den);
}

std::string to_string(const Integer& value) { return value.get_str(10); }

std::string to_string(const Rational& value) { return value.get_str(10); }

Integer floor(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer ceil(const Rational& value) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer integer_root_floor(const Integer& value, unsigned long n) {
  if (value < 0) throw InvalidArgument("integer root of a negative number");
  if (n == 0) throw InvalidArgument("zeroth root");
  Integer out;
  mpz_root(out.get_mpz_t(), value.get_mpz_t(), n);
  return out;
}

bool is_perfect_square(const Integer& value) {
  return value >= 0 && mpz_perfect_square_p(value.get_mpz_t()) != 0;
}

bool exact_root(const Integer& value, unsigned long n, Integer& root) {
  if (value < 0 && n % 2 == 0) return false;
  return mpz_root(root.get_mpz_t(), value.get_mpz_t(), n) != 0;
}

Integer binomial(unsigned long top, unsigned long bottom) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), top, bottom);
  return out;
}

std::int64_t to_int64(const Integer& value) {
  if (!mpz_fits_slong_p(value.get_mpz_t())) {
    throw InvalidArgument("integer " + to_string(value) + " does not fit in 64 bits");
  }
  return mpz_get_si(value.get_mpz_t());
}

std::size_t bit_length(const Integer& value) {
  if (value == 0) return 0;
  return mpz_sizeinbase(value.get_mpz_t(), 2);
}

}  // namespace seshadri
