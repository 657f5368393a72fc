#include <doctest.h>

#include "seshadri/error.hpp"
#include "seshadri/prime_field.hpp"
#include "seshadri/radical.hpp"
#include "seshadri/rational.hpp"

#include <mpfr.h>

#include <random>

using namespace seshadri;

namespace {

RadicalValue rad(const char* text) { return parse_radical(text); }

bool lt(const RadicalValue& a, const RadicalValue& b) { return radical_cmp(a, b) == std::strong_ordering::less; }
bool eq(const RadicalValue& a, const RadicalValue& b) { return radical_cmp(a, b) == std::strong_ordering::equal; }

}  // namespace

TEST_SUITE("exact") {

TEST_CASE("rational helpers") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidArgument);
  CHECK(floor(Rational(-7, 2)) == -4);
  CHECK(ceil(Rational(-7, 2)) == -3);
  CHECK(ceil(Rational(6)) == 6);
  CHECK(binomial(6, 2) == 15);
  CHECK(integer_root_floor(Integer(80), 4) == 2);
  CHECK(is_perfect_square(Integer(36)));
  CHECK_FALSE(is_perfect_square(Integer(35)));
  CHECK(make_rational(12, 18).get_den() == 3);
  CHECK(RadicalValue(Rational(12, 18)) == RadicalValue(Rational(2, 3)));
  CHECK(RadicalValue::power(4, Rational(2, 4)) == RadicalValue(2));
}

TEST_CASE("radical_mul examples") {
  CHECK(RadicalValue(Rational(1, 3)) * RadicalValue(2) == RadicalValue(Rational(2, 3)));
  CHECK(RadicalValue::power(4, Rational(1, 2)) * RadicalValue::power(9, Rational(1, 2)) == RadicalValue(6));
  CHECK(RadicalValue::power(2, Rational(1, 2)) * RadicalValue::power(2, Rational(1, 3)) ==
        RadicalValue::power(2, Rational(5, 6)));
  CHECK((RadicalValue::power(4, Rational(1, 2)) * RadicalValue::power(9, Rational(1, 2))).is_rational());
}

TEST_CASE("radical_cmp examples") {
  CHECK(eq(RadicalValue(Rational(1, 3)), RadicalValue::power(9, Rational(-1, 2))));
  CHECK(lt(RadicalValue(Rational(2, 5)), RadicalValue::power(5, Rational(-1, 2))));
  CHECK(lt(RadicalValue::power(Rational(12, 121), Rational(1, 2)), RadicalValue::power(10, Rational(-1, 2))));
  // 12 * 10 versus 121 by plain integer arithmetic
  CHECK(Integer(12) * 10 < Integer(121));
  CHECK(radical_cmp(RadicalValue(-2), RadicalValue(1)) == std::strong_ordering::less);
  CHECK(radical_cmp(RadicalValue(0), RadicalValue::power(2, Rational(-7, 3))) == std::strong_ordering::less);
  CHECK(radical_cmp(-RadicalValue::power(2, Rational(1, 2)), -RadicalValue::power(3, Rational(1, 3))) ==
        std::strong_ordering::greater);
}

TEST_CASE("radical_cmp budget") {
  auto a = RadicalValue::power(2, Rational(1, 100003));
  auto b = RadicalValue::power(3, Rational(1, 99991));
  CHECK_THROWS_AS(radical_cmp(a, b), BudgetExceeded);
  CHECK(radical_cmp(a, b, std::size_t{1} << 40) == std::strong_ordering::less);
}

TEST_CASE("nth_power and nth_root") {
  CHECK(nth_power(RadicalValue::power(2, Rational(1, 2)), 2) == RadicalValue(2));
  CHECK(nth_power(RadicalValue(Rational(1, 3)), 3) == RadicalValue(Rational(1, 27)));
  CHECK(nth_power(RadicalValue::power(Rational(4, 9), Rational(1, 2)), 2) == RadicalValue(Rational(4, 9)));
  for (const char* s : {"2", "7/5", "10^(1/3)", "(12/121)^(1/2)", "6^(-2/5)"}) {
    for (unsigned long n : {1UL, 2UL, 3UL, 7UL}) {
      CHECK(nth_power(nth_root(rad(s), n), n) == rad(s));
    }
  }
}

TEST_CASE("canonical form") {
  CHECK(RadicalValue::power(8, Rational(1, 3)) == RadicalValue(2));
  CHECK(RadicalValue::power(12, Rational(1, 2)) == RadicalValue(2) * RadicalValue::power(3, Rational(1, 2)));
  CHECK(to_string(rad("2*(12/121)^(1/2)")) == "4*3^(1/2)/11");
  CHECK(to_string(rad("10^(-1/2)")) == "10^(1/2)/10");
  CHECK(to_string(RadicalValue(0)) == "0");
  for (const auto& [base, exp] : rad("2*(12/121)^(1/2)").factors()) {
    CHECK(base > 1);
    CHECK(exp != 0);
  }
  CHECK(RadicalValue::power(Integer("1000000000000000000000007") * Integer("1000000000000000000000007"),
                            Rational(1, 2)) == RadicalValue(Rational(Integer("1000000000000000000000007"))));
}

TEST_CASE("inverse and ordering laws on samples") {
  std::mt19937_64 rng(5);
  std::vector<RadicalValue> pool;
  for (const char* s : {"1/3", "2^(1/2)", "3^(1/3)", "(12/121)^(1/2)", "10^(-1/2)", "5/7", "6^(2/3)", "-2", "7^(-1/4)"}) {
    pool.push_back(rad(s));
  }
  for (const auto& a : pool) {
    CHECK(radical_mul(a, radical_inverse(a)) == RadicalValue(1));
    CHECK(radical_cmp(a, a) == std::strong_ordering::equal);
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = 0; j < pool.size(); ++j) {
      auto ab = radical_cmp(pool[i], pool[j]);
      auto ba = radical_cmp(pool[j], pool[i]);
      CHECK((ab == std::strong_ordering::less) == (ba == std::strong_ordering::greater));
      for (std::size_t k = 0; k < pool.size(); ++k) {
        if (ab == std::strong_ordering::less && radical_cmp(pool[j], pool[k]) == std::strong_ordering::less) {
          CHECK(radical_cmp(pool[i], pool[k]) == std::strong_ordering::less);
        }
      }
    }
  }
}

TEST_CASE("floor and ceil") {
  CHECK(radical_floor(rad("2^(1/2)")) == 1);
  CHECK(radical_ceil(rad("2^(1/2)")) == 2);
  CHECK(radical_ceil(RadicalValue(6)) == 6);
  CHECK(radical_floor(-rad("2^(1/2)")) == -2);
  CHECK(radical_ceil(rad("18*9^(-1/2)")) == 6);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_radical("2^"), ParseError);
  CHECK_THROWS_AS(parse_radical("(-4)^(1/2)"), InvalidArgument);
  CHECK_THROWS_AS(parse_radical("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_radical("2 3"), ParseError);
}

TEST_CASE("JSON round trip is bit exact") {
  for (const char* s : {"0", "1", "-2/3", "2*(12/121)^(1/2)", "10^(-1/2)", "6^(5/7)*11^(-3/2)",
                        "123456789012345678901234567890^(1/2)"}) {
    const RadicalValue v = rad(s);
    const auto j = to_json(v);
    CHECK(radical_from_json(j) == v);
    CHECK(to_json(radical_from_json(j)).dump() == j.dump());
    CHECK(parse_radical(to_string(v)) == v);
  }
}

TEST_CASE("radical_cmp agrees with high precision intervals") {
  // Values are evaluated at 512 bits and treated as intervals of relative
  // width 2^-400.
  std::mt19937_64 rng(20240611);
  const std::vector<Rational> bases = {2, 3, 5, 6, 7, 10, 12, Rational(1, 2), Rational(2, 3), Rational(9, 4),
                                       Rational(121, 12), Rational(17, 5), 97};
  auto random_value = [&]() {
    std::uniform_int_distribution<int> nf(1, 3), bi(0, static_cast<int>(bases.size()) - 1), num(-4, 4), den(1, 6),
        coef(1, 30), sg(0, 9);
    RadicalValue v(make_rational(coef(rng), coef(rng)));
    const int k = nf(rng);
    for (int i = 0; i < k; ++i) {
      int e = num(rng);
      if (e == 0) e = 1;
      v = v * RadicalValue::power(bases[static_cast<std::size_t>(bi(rng))], make_rational(e, den(rng)));
    }
    return sg(rng) == 0 ? -v : v;
  };
  auto eval = [](const RadicalValue& v, mpfr_t out) {
    mpfr_t term, lg;
    mpfr_inits2(512, term, lg, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(out, 0, MPFR_RNDN);
    if (v.sign() != 0) {
      mpfr_set_ui(out, 0, MPFR_RNDN);
      for (const auto& [base, exp] : v.factors()) {
        mpfr_set_z(lg, base.get_mpz_t(), MPFR_RNDN);
        mpfr_log(lg, lg, MPFR_RNDN);
        mpfr_mul_q(term, lg, exp.get_mpq_t(), MPFR_RNDN);
        mpfr_add(out, out, term, MPFR_RNDN);
      }
      mpfr_exp(out, out, MPFR_RNDN);
      if (v.sign() < 0) mpfr_neg(out, out, MPFR_RNDN);
    }
    mpfr_clears(term, lg, static_cast<mpfr_ptr>(nullptr));
  };

  int separated = 0;
  int checked = 0;
  mpfr_t x, y, diff, tol;
  mpfr_inits2(512, x, y, diff, tol, static_cast<mpfr_ptr>(nullptr));
  for (int iter = 0; iter < 3000; ++iter) {
    RadicalValue a = random_value();
    RadicalValue b = iter % 10 == 0 ? a * RadicalValue::power(bases[iter % bases.size()], Rational(1, 3)) *
                                          RadicalValue::power(bases[iter % bases.size()], Rational(-1, 3))
                                    : random_value();
    eval(a, x);
    eval(b, y);
    mpfr_sub(diff, x, y, MPFR_RNDN);
    mpfr_abs(tol, x, MPFR_RNDN);
    mpfr_abs(diff, diff, MPFR_RNDN);
    mpfr_t ay;
    mpfr_init2(ay, 512);
    mpfr_abs(ay, y, MPFR_RNDN);
    mpfr_max(tol, tol, ay, MPFR_RNDN);
    mpfr_clear(ay);
    mpfr_mul_2si(tol, tol, -400, MPFR_RNDN);
    const auto c = radical_cmp(a, b);
    ++checked;
    if (mpfr_cmp(diff, tol) > 0) {
      ++separated;
      const int expected = mpfr_cmp(x, y);
      CHECK(((expected < 0) == (c == std::strong_ordering::less)));
      CHECK(((expected > 0) == (c == std::strong_ordering::greater)));
    } else {
      CHECK(c == std::strong_ordering::equal);
      CHECK(a == b);
    }
  }
  mpfr_clears(x, y, diff, tol, static_cast<mpfr_ptr>(nullptr));
  CHECK(checked == 3000);
  CHECK(separated >= 1000);
}

TEST_CASE("prime field construction") {
  CHECK(default_primes(5).size() == 5);
  for (auto p : default_primes()) {
    CHECK(is_prime_u32(p));
    CHECK(p > (1u << 30));
    CHECK(p < (1u << 31));
  }
  CHECK_THROWS_AS(PrimeField(7), InvalidArgument);
  CHECK_THROWS_AS(PrimeField(2147483645u), InvalidArgument);
  PrimeField f(2147483647u);
  CHECK(f.from_int(-1) == 2147483646u);
  CHECK(f.from_rational(Rational(1, 2)) == f.inv(2));
  CHECK_THROWS_AS(f.from_rational(Rational(1, 2147483647)), InvalidArgument);
  CHECK_THROWS_AS(f.inv(0), InvalidArgument);
}

TEST_CASE("prime field axioms on samples") {
  for (auto p : default_primes()) {
    PrimeField f(p);
    std::mt19937_64 rng(p);
    std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
    for (int i = 0; i < 400; ++i) {
      FieldElement a(dist(rng), f), b(dist(rng), f), c(dist(rng), f);
      CHECK(a.residue() < p);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a - a == FieldElement(0, f));
      if (a.residue() != 0) {
        CHECK(a.pow(p - 2) * a == FieldElement(1, f));
        CHECK(a * a.inverse() == FieldElement(1, f));
      }
    }
  }
  FieldElement x(3, PrimeField(2147483647u)), y(3, PrimeField(2147483629u));
  CHECK_THROWS_AS(x + y, InvalidArgument);
}

}  // TEST_SUITE
