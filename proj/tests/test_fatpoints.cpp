#include <doctest.h>

#include "support/oracle.hpp"

#include "seshadri/error.hpp"
#include "seshadri/fatpoints.hpp"
#include "seshadri/linalg.hpp"
#include "seshadri/monomials.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace seshadri;

namespace {

const PrimeField kP0(default_primes()[0]);
const PrimeField kP1(default_primes()[1]);

PointConfiguration as_config(int n, const std::vector<oracle::IntPoint>& pts, bool special = false) {
  std::vector<RationalPoint> out;
  for (const auto& p : pts) {
    RationalPoint q;
    for (long c : p) q.emplace_back(c);
    out.push_back(std::move(q));
  }
  return PointConfiguration::from_rational(n, std::move(out), special);
}

std::size_t engine_kernel(const PointConfiguration& config, const std::vector<int>& mults, int d,
                          const PrimeField& field) {
  auto pts = config.reduce(field);
  return kernel_dimension(pts, mults, config.n(), d, field).kernel;
}

// Values produced by the rational oracle (derivative conditions at seeded
// integer points, exact elimination) and frozen here. Each row is
// (r, m, alpha) for n = 2.
struct Frozen {
  int r, m, alpha;
};
constexpr Frozen kPlaneSquares[] = {{4, 1, 2},  {4, 2, 4},  {4, 3, 6},  {4, 4, 8},  {4, 5, 10},
                                    {9, 1, 3},  {9, 2, 6},  {9, 3, 9},  {9, 4, 12}, {9, 5, 15}};

}  // namespace

TEST_SUITE("monomials") {

TEST_CASE("grevlex order in three variables") {
  auto mons = monomials(3, 2);
  std::vector<Exponent> expected = {{2, 0, 0}, {1, 1, 0}, {0, 2, 0}, {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};
  CHECK(mons == expected);
  CHECK(grevlex_greater({1, 1, 0}, {0, 2, 0}));
  CHECK_FALSE(grevlex_greater({0, 0, 2}, {2, 0, 0}));
}

TEST_CASE("counts and index") {
  for (int nv = 1; nv <= 4; ++nv) {
    for (int d = 0; d <= 7; ++d) {
      auto mons = monomials(nv, d);
      CHECK(mons.size() == monomial_count(nv, d));
      CHECK(mons.size() == oracle::degree_monomials(nv, d).size());
      CHECK(std::is_sorted(mons.begin(), mons.end(), [](const Exponent& a, const Exponent& b) {
        return grevlex_greater(a, b);
      }));
      MonomialIndex idx(nv, d);
      for (std::size_t i = 0; i < mons.size(); ++i) CHECK(idx.index_of(mons[i]) == i);
    }
  }
}

}  // TEST_SUITE

TEST_SUITE("linalg") {

TEST_CASE("zero and identity matrices") {
  ModMatrix zero(3, 6, kP0);
  auto rk = rank_and_kernel(zero);
  CHECK(rk.rank == 0);
  CHECK(rk.kernel.size() == 6);

  ModMatrix id(3, 3, kP0);
  for (std::size_t i = 0; i < 3; ++i) id(i, (i + 1) % 3) = 1;
  rk = rank_and_kernel(id);
  CHECK(rk.rank == 3);
  CHECK(rk.kernel.empty());
  CHECK(rank(id) == 3);
}

TEST_CASE("kernel vectors are annihilated and independent of rank path") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 5 + static_cast<std::size_t>(trial % 7), cols = 9;
    ModMatrix m(rows, cols, kP1);
    // rank at most 4 by construction
    std::vector<std::vector<std::uint32_t>> basis(4, std::vector<std::uint32_t>(cols));
    for (auto& b : basis) {
      for (auto& x : b) x = static_cast<std::uint32_t>(rng() % kP1.modulus());
    }
    for (std::size_t i = 0; i < rows; ++i) {
      for (const auto& b : basis) {
        const auto c = static_cast<std::uint32_t>(rng() % kP1.modulus());
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = kP1.add(m(i, j), kP1.mul(c, b[j]));
      }
    }
    auto rk = rank_and_kernel(m);
    CHECK(rk.rank == rank(m));
    CHECK(rk.rank + rk.kernel.size() == cols);
    for (const auto& v : rk.kernel) {
      auto mv = m.apply(v);
      CHECK(std::all_of(mv.begin(), mv.end(), [](std::uint32_t x) { return x == 0; }));
    }
  }
}

}  // TEST_SUITE

TEST_SUITE("fatpoints") {

TEST_CASE("condition matrix at a coordinate point") {
  auto config = PointConfiguration::from_rational(2, {{1, 0, 0}});
  auto cm = build_condition_matrix(FatPointScheme{config, {2}}, 2, kP0);
  CHECK(cm.matrix.rows() == 3);
  CHECK(cm.matrix.cols() == 6);
  auto rk = rank_and_kernel(cm.matrix);
  CHECK(rk.rank == 3);
  REQUIRE(rk.kernel.size() == 3);
  // columns x0^2, x0x1, x1^2, x0x2, x1x2, x2^2
  std::set<std::size_t> support;
  for (const auto& v : rk.kernel) {
    CHECK(v[0] == 0);
    CHECK(v[1] == 0);
    CHECK(v[3] == 0);
    for (std::size_t j = 0; j < 6; ++j) {
      if (v[j] != 0) support.insert(j);
    }
  }
  CHECK(support == std::set<std::size_t>{2, 4, 5});
}

TEST_CASE("condition matrix shapes") {
  auto three = PointConfiguration::from_rational(2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  auto cm = build_condition_matrix(FatPointScheme{three, {1, 1, 1}}, 1, kP0);
  CHECK(cm.matrix.rows() == 3);
  CHECK(cm.matrix.cols() == 3);
  CHECK(cm.row_point == std::vector<std::size_t>{0, 1, 2});

  auto config = PointConfiguration::random(3, 4, kP0, 1);
  std::vector<int> mults = {3, 0, 1, 2};
  auto big = build_condition_matrix(FatPointScheme{config, mults}, 5, kP0);
  CHECK(big.matrix.cols() == 56);
  CHECK(big.matrix.rows() == condition_count(3, mults));
  CHECK(big.matrix.rows() == 10 + 0 + 1 + 4);
}

TEST_CASE("five general double points: rank 14 of 15 over two primes") {
  for (const auto& field : {kP0, kP1}) {
    auto config = PointConfiguration::random(2, 5, field, 0);
    auto cm = build_condition_matrix(FatPointScheme{config, uniform_mults(5, 2)}, 4, field);
    CHECK(cm.matrix.rows() == 15);
    CHECK(cm.matrix.cols() == 15);
    auto rk = rank_and_kernel(cm.matrix);
    CHECK(rk.rank == 14);
    CHECK(rk.kernel.size() == 1);
  }
  auto pts = oracle::random_int_points(2, 5, 11);
  CHECK(oracle::rank_q(oracle::derivative_conditions(pts, uniform_mults(5, 2), 4)) == 14);
}

TEST_CASE("engine rows agree with derivative conditions on the same points") {
  struct Case {
    int n, r, m, d;
  };
  const Case cases[] = {{2, 5, 2, 4}, {2, 6, 2, 5}, {2, 9, 1, 2}, {2, 9, 2, 6}, {2, 4, 3, 5},
                        {3, 8, 1, 2}, {3, 9, 2, 4}, {3, 5, 2, 3}, {1, 3, 2, 5}, {2, 7, 2, 5}};
  for (const auto& c : cases) {
    auto pts = oracle::random_int_points(c.n, c.r, 100 + static_cast<std::uint64_t>(c.d));
    auto mults = uniform_mults(static_cast<std::size_t>(c.r), c.m);
    auto config = as_config(c.n, pts);
    const std::size_t q = oracle::kernel_dim_q(pts, mults, c.d);
    CAPTURE(c.n);
    CAPTURE(c.r);
    CAPTURE(c.d);
    CHECK(engine_kernel(config, mults, c.d, kP0) == q);
    CHECK(engine_kernel(config, mults, c.d, kP1) == q);
  }
  // special positions, including points with zero leading coordinates
  std::vector<std::vector<oracle::IntPoint>> special = {
      {{1, 0, 0}, {1, 1, 0}, {1, 2, 0}},
      {{0, 1, 2}, {0, 1, 5}, {0, 0, 1}, {1, 1, 1}},
      {{1, 1, 1}, {1, -1, 1}, {1, 1, -1}, {1, -1, -1}, {0, 0, 1}, {0, 1, 0}},
  };
  for (const auto& pts : special) {
    for (int m = 1; m <= 3; ++m) {
      auto mults = uniform_mults(pts.size(), m);
      for (int d = 1; d <= 2 * m + 1; ++d) {
        CHECK(engine_kernel(as_config(2, pts), mults, d, kP0) == oracle::kernel_dim_q(pts, mults, d));
      }
    }
  }
}

TEST_CASE("alpha of one fat point") {
  auto config = PointConfiguration::from_rational(2, {{Rational(1, 2), 3, -1}});
  for (int m = 1; m <= 3; ++m) {
    auto res = alpha(FatPointScheme{config, {m}});
    CHECK(res.alpha == m);
    CHECK(res.actual_mults == std::vector<int>{m});
  }
  for (int m = 1; m <= 3; ++m) {
    auto res = alpha_generic(2, {m}, 2, default_primes(2), 0);
    CHECK(res.alpha == m);
  }
}

TEST_CASE("alpha on random configurations") {
  auto nine = alpha_generic(2, uniform_mults(9, 1), 2, default_primes(2), 0);
  CHECK(nine.alpha == 3);
  auto five_double = alpha_generic(2, uniform_mults(5, 2), 2, default_primes(2), 0);
  CHECK(five_double.alpha == 4);
  CHECK(expected_alpha(2, std::vector<int>(5, 2)) == 5);
  for (int a : five_double.actual_mults) CHECK(a >= 2);

  auto pts = oracle::random_int_points(2, 9, 11);
  CHECK(oracle::alpha_q(pts, uniform_mults(9, 1)) == 3);
}

TEST_CASE("alpha_generic on squares matches frozen oracle values") {
  for (const auto& f : kPlaneSquares) {
    auto res = alpha_generic(2, uniform_mults(static_cast<std::size_t>(f.r), f.m), 2, default_primes(2), 0);
    CAPTURE(f.r);
    CAPTURE(f.m);
    CHECK(res.alpha == f.alpha);
    CHECK(res.agreeing_trials() == 4);
  }
  auto space = alpha_generic(3, uniform_mults(8, 1), 2, default_primes(2), 0);
  CHECK(space.alpha == 2);
  auto space2 = alpha_generic(3, uniform_mults(8, 2), 2, default_primes(2), 0);
  CHECK(space2.alpha == 4);
}

TEST_CASE("oracle reproduces the small frozen values") {
  for (const auto& f : kPlaneSquares) {
    if (f.m > 2) continue;
    auto pts = oracle::random_int_points(2, f.r, 11);
    auto mults = uniform_mults(static_cast<std::size_t>(f.r), f.m);
    CHECK(oracle::kernel_dim_q(pts, mults, f.alpha - 1) == 0);
    CHECK(oracle::kernel_dim_q(pts, mults, f.alpha) > 0);
  }
  auto pts = oracle::random_int_points(3, 8, 11);
  CHECK(oracle::alpha_q(pts, uniform_mults(8, 1)) == 2);
}

TEST_CASE("scan and binary search agree") {
  for (int m = 1; m <= 3; ++m) {
    for (int r : {3, 5, 6, 7}) {
      auto mults = uniform_mults(static_cast<std::size_t>(r), m);
      auto a = alpha_generic(2, mults, 1, default_primes(1), 9, false);
      auto b = alpha_generic(2, mults, 1, default_primes(1), 9, true);
      CHECK(a.alpha == b.alpha);
      CHECK(to_json(a).dump() == to_json(b).dump());
    }
  }
}

TEST_CASE("actual multiplicity") {
  // x1*x2 is the column x1x2 = index 4 in degree 2
  std::vector<std::uint32_t> form(6, 0);
  form[4] = 1;
  CHECK(actual_multiplicity(form, 2, 2, {1, 0, 0}, kP0) == 2);
  CHECK(actual_multiplicity(form, 2, 2, {0, 1, 0}, kP0) == 1);
  CHECK(actual_multiplicity(form, 2, 2, {1, 1, 1}, kP0) == 0);
  // x0 - x1 + 2 x2 through [1:1:0] and [2:0:-1]
  std::vector<std::uint32_t> line = {1, kP0.neg(1), 2};
  CHECK(actual_multiplicity(line, 2, 1, {1, 1, 0}, kP0) == 1);
  CHECK(actual_multiplicity(line, 2, 1, {2, 0, kP0.neg(1)}, kP0) == 1);
  CHECK_THROWS_AS(actual_multiplicity(std::vector<std::uint32_t>(3, 0), 2, 1, {1, 0, 0}, kP0), InvalidArgument);

  auto conic = alpha_generic(2, uniform_mults(5, 1), 2, default_primes(2), 0);
  CHECK(conic.alpha == 2);
  CHECK(conic.actual_mults == std::vector<int>(5, 1));

  auto pts = oracle::random_int_points(2, 5, 11);
  auto v = oracle::kernel_vector_q(pts, uniform_mults(5, 1), 2);
  REQUIRE_FALSE(v.empty());
  for (const auto& p : pts) CHECK(oracle::vanishing_order_q(v, 3, 2, p) == 1);
}

TEST_CASE("witness vanishing orders agree with the oracle on integer points") {
  auto pts = oracle::random_int_points(2, 5, 41);
  auto config = as_config(2, pts);
  auto res = alpha(FatPointScheme{config, uniform_mults(5, 2)});
  CHECK(res.alpha == 4);
  auto v = oracle::kernel_vector_q(pts, uniform_mults(5, 2), 4);
  REQUIRE_FALSE(v.empty());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(res.actual_mults[i] == oracle::vanishing_order_q(v, 3, 4, pts[i]));
  }
}

TEST_CASE("expected alpha") {
  CHECK(expected_alpha(2, std::vector<int>{1, 1, 1}) == 2);
  CHECK(expected_alpha(2, std::vector<int>(5, 2)) == 5);
  CHECK(expected_alpha(3, std::vector<int>(8, 1)) == 2);
  CHECK(expected_alpha(2, std::vector<int>{0, 4}) == 4);
}

TEST_CASE("double point status table") {
  CHECK(ah_double_point_status(2, 4, 5) == DoublePointStatus::Exceptional);
  CHECK(ah_double_point_status(2, 5, 7) == DoublePointStatus::Regular);
  CHECK(ah_double_point_status(3, 4, 9) == DoublePointStatus::Exceptional);
  CHECK(ah_double_point_status(4, 3, 7) == DoublePointStatus::Exceptional);
  CHECK(ah_double_point_status(4, 4, 14) == DoublePointStatus::Exceptional);
  CHECK(ah_double_point_status(3, 2, 3) == DoublePointStatus::Exceptional);
  CHECK(ah_double_point_status(3, 2, 4) == DoublePointStatus::Regular);
  CHECK(ah_double_point_status(2, 2, 1) == DoublePointStatus::Regular);
  CHECK_THROWS_AS(ah_double_point_status(2, 1, 3), InvalidArgument);

  auto pts = oracle::random_int_points(2, 7, 11);
  CHECK(oracle::rank_q(oracle::derivative_conditions(pts, uniform_mults(7, 2), 5)) == 21);
  auto pts3 = oracle::random_int_points(3, 9, 11);
  CHECK(oracle::rank_q(oracle::derivative_conditions(pts3, uniform_mults(9, 2), 4)) == 34);
}

TEST_CASE("generic double points have the expected kernel off the exception table") {
  for (int n = 2; n <= 3; ++n) {
    for (int d = 2; d <= 8; ++d) {
      for (int r = 1; r <= 20; ++r) {
        auto config = PointConfiguration::random(n, static_cast<std::size_t>(r), kP0, 17);
        const auto mults = uniform_mults(static_cast<std::size_t>(r), 2);
        auto kd = kernel_dimension(config.field_points(), mults, n, d, kP0);
        CAPTURE(n);
        CAPTURE(d);
        CAPTURE(r);
        if (ah_double_point_status(n, d, r) == DoublePointStatus::Regular) {
          CHECK(kd.kernel == kd.expected_kernel);
        } else {
          CHECK(kd.kernel > kd.expected_kernel);
        }
      }
    }
  }
}

TEST_CASE("double points reach the counting bound unless the degree below is exceptional") {
  for (int n = 2; n <= 3; ++n) {
    for (int r = 1; r <= 20; ++r) {
      const auto mults = uniform_mults(static_cast<std::size_t>(r), 2);
      const int e = expected_alpha(n, mults);
      auto res = alpha_generic(n, mults, 1, default_primes(1), 23);
      CAPTURE(n);
      CAPTURE(r);
      if (e - 1 >= 2 && ah_double_point_status(n, e - 1, r) == DoublePointStatus::Exceptional) {
        CHECK(res.alpha < e);
      } else {
        CHECK(res.alpha == e);
      }
    }
  }
}

TEST_CASE("alpha never exceeds the counting bound") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 25; ++t) {
    const int n = 2 + t % 2;
    const std::size_t r = 1 + rng() % 8;
    std::vector<int> mults(r);
    for (auto& m : mults) m = static_cast<int>(rng() % 4);
    mults[0] = std::max(mults[0], 1);
    auto res = alpha_generic(n, mults, 1, default_primes(1), t);
    CHECK(res.alpha <= expected_alpha(n, mults));
    for (std::size_t i = 0; i < r; ++i) CHECK(res.actual_mults[i] >= mults[i]);
  }
}

TEST_CASE("results are deterministic and seeds matter only through the points") {
  auto a = alpha_generic(2, uniform_mults(7, 2), 3, default_primes(2), 5);
  auto b = alpha_generic(2, uniform_mults(7, 2), 3, default_primes(2), 5);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(witness_json(a).dump() == witness_json(b).dump());
  CHECK(a.trial_log.size() == 6);
  auto j = to_json(a);
  for (const char* key : {"n", "r", "mults", "alpha", "actual_mults", "primes", "seed", "trials", "witness_degree"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["r"] == 7);
  CHECK(j["witness_degree"] == a.alpha);
}

TEST_CASE("invalid schemes") {
  auto config = PointConfiguration::from_rational(2, {{1, 0, 0}, {0, 1, 0}});
  CHECK_THROWS_AS(alpha(FatPointScheme{config, {0, 0}}), DegenerateScheme);
  CHECK_THROWS_AS(alpha(FatPointScheme{config, {1}}), InvalidArgument);
  CHECK_THROWS_AS(alpha(FatPointScheme{config, {1, -1}}), InvalidArgument);
  CHECK_THROWS_AS(PointConfiguration::from_rational(2, {{0, 0, 0}}), InvalidArgument);
  CHECK_THROWS_AS(PointConfiguration::from_rational(2, {{1, 2, 3}, {2, 4, 6}}), InvalidArgument);
  CHECK_THROWS_AS(PointConfiguration::from_rational(2, {{1, 2}}), InvalidArgument);
  CHECK_THROWS_AS(alpha_generic(2, {0, 0, 0}, 1, default_primes(1), 0), DegenerateScheme);
  CHECK_THROWS_AS(build_condition_matrix(FatPointScheme{config, {1, 1}}, 0, kP0), InvalidArgument);
  // a point that collides with another only modulo p
  const long p = static_cast<long>(kP0.modulus());
  auto collide = PointConfiguration::from_rational(2, {{1, 0, 0}, {1, p, 0}});
  CHECK_THROWS_AS(collide.reduce(kP0), InvalidArgument);
}

}  // TEST_SUITE
