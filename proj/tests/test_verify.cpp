#include <doctest.h>

#include "seshadri/error.hpp"
#include "seshadri/verify.hpp"

using namespace seshadri;

TEST_SUITE("verify") {

TEST_CASE("certify accepts engine witnesses") {
  auto cubic = alpha_generic(2, uniform_mults(9, 1), 2, default_primes(2), 0);
  auto cert = certify(cubic);
  CHECK(cert.ok);
  CHECK_FALSE(cert.violated_condition.has_value());

  auto quartic = alpha_generic(2, uniform_mults(5, 2), 2, default_primes(2), 0);
  for (int a : quartic.actual_mults) CHECK(a >= 2);
  CHECK(certify(quartic).ok);

  auto explicit_config = PointConfiguration::from_rational(2, {{1, 0, 0}, {1, 1, 0}, {1, 2, 0}}, true);
  auto line = alpha(FatPointScheme{explicit_config, {1, 1, 1}});
  CHECK(line.alpha == 1);
  CHECK(certify(line).ok);
}

TEST_CASE("certify rejects corrupted results") {
  auto cubic = alpha_generic(2, uniform_mults(9, 1), 2, default_primes(2), 0);
  auto bad = cubic;
  for (std::size_t i = 0; i < bad.witness.size(); ++i) {
    if (bad.witness[i] != 0) {
      bad.witness[i] = (bad.witness[i] + 1) % bad.witness_prime;
      break;
    }
  }
  auto cert = certify(bad);
  CHECK_FALSE(cert.ok);
  CHECK(cert.violated_condition.has_value());

  auto zero = cubic;
  std::fill(zero.witness.begin(), zero.witness.end(), 0u);
  CHECK_FALSE(certify(zero).ok);

  auto inflated = cubic;
  inflated.alpha = 4;
  CHECK_FALSE(certify(inflated).ok);

  auto overclaimed = cubic;
  overclaimed.actual_mults[0] = 2;
  CHECK_FALSE(certify(overclaimed).ok);
}

TEST_CASE("remark-alpha suite") {
  auto plane = suite_remark_alpha(2, {4, 9}, 5);
  CHECK(plane.ok());
  CHECK(plane.attempted == 10);
  CHECK(plane.counterexamples.empty());
  for (const auto& c : plane.cases) CHECK(c["equality"] == true);

  auto space = suite_remark_alpha(3, {8}, 2);
  CHECK(space.ok());
  CHECK(space.attempted == 2);
  CHECK_THROWS_AS(suite_remark_alpha(2, {5}, 1), InvalidArgument);
}

TEST_CASE("semicontinuity suite") {
  auto cases = default_semicontinuity_cases();
  CHECK(cases.size() >= 3);
  auto report = suite_semicontinuity(cases);
  CHECK(report.ok());
  CHECK(report.attempted == static_cast<int>(cases.size()));
  bool saw_collinear = false;
  for (const auto& c : report.cases) {
    if (c["case"] == "collinear-3") {
      saw_collinear = true;
      CHECK(c["alpha_special"] == 1);
      CHECK(c["alpha_generic"] == 2);
    }
    if (c["case"] == "collinear-5") {
      CHECK(c["alpha_special"] == 1);
      CHECK(c["alpha_generic"] == 2);
    }
    if (c["case"] == "three-collinear-plus-one-double") {
      CHECK(c["alpha_special"] <= 4);
      CHECK(c["alpha_generic"] == 4);
    }
  }
  CHECK(saw_collinear);
}

TEST_CASE("axioms suite") {
  auto pairs = sample_mult_pairs(4, 2, 5, 0);
  REQUIRE(pairs.size() == 5);
  CHECK(pairs.front().first == pairs.front().second);
  auto report = suite_alpha_axioms(2, 4, {{uniform_mults(4, 1), uniform_mults(4, 2)}});
  CHECK(report.ok());
  auto nine = suite_alpha_axioms(2, 9, {{uniform_mults(9, 1), uniform_mults(9, 1)}});
  CHECK(nine.ok());
  auto sampled = suite_alpha_axioms(2, 6, sample_mult_pairs(6, 3, 6, 1));
  CHECK(sampled.ok());
  CHECK(sampled.counterexamples.empty() == (sampled.passed == sampled.attempted));
}

TEST_CASE("reports are deterministic") {
  auto a = to_json(suite_semicontinuity(default_semicontinuity_cases())).dump();
  auto b = to_json(suite_semicontinuity(default_semicontinuity_cases())).dump();
  CHECK(a == b);
  auto timed = to_json(suite_semicontinuity(default_semicontinuity_cases()), true);
  CHECK(timed.contains("wall_seconds"));
  CHECK_FALSE(nlohmann::json::parse(a).contains("wall_seconds"));
}

}  // TEST_SUITE
