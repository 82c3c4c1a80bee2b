#include "doctest.h"
#include "polypat/local_global.hpp"

#include <cmath>

using namespace polypat;

TEST_CASE("mean product of the constant spec") {
  LocalFunctionSpec spec;
  spec.name = "one";
  spec.support_bound = 7;
  spec.fixed_divisor_poly = parse_poly("y");
  spec.c = 1.0;
  spec.f = [](std::uint64_t, std::int64_t) { return 1.0; };
  auto rep = mean_product(spec, 1000);
  CHECK(rep.empirical == doctest::Approx(1.0));
  CHECK(rep.factored == doctest::Approx(1.0));
  CHECK(rep.gap < 1e-12);
}

TEST_CASE("lambda_p spec: factored equals 1, empirical within 1%") {
  auto catalog = local_spec_catalog();
  const auto& spec = catalog[0];
  REQUIRE(spec.name == "lambda_p");
  auto rep = mean_product(spec, 100000);
  CHECK(rep.factored == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(rep.empirical - 1.0) < 0.01);
}

TEST_CASE("parity spec counts odd numbers") {
  LocalFunctionSpec spec;
  spec.name = "odd-doubler";
  spec.support_bound = 2;
  spec.fixed_divisor_poly = parse_poly("y");
  spec.c = 2.0;
  spec.f = [](std::uint64_t p, std::int64_t n) {
    if (p != 2) return 1.0;
    return mod_floor(n, 2) == 1 ? 2.0 : 0.0;
  };
  const std::uint64_t n = 100001;  // odd count = 50001
  auto rep = mean_product(spec, n);
  CHECK(rep.factored == doctest::Approx(1.0));
  CHECK(rep.empirical == doctest::Approx(2.0 * 50001.0 / 100001.0));
  CHECK(rep.gap < 1.0 / static_cast<double>(n) + 1e-12);
}

TEST_CASE("contract violations are caught") {
  LocalFunctionSpec bad;
  bad.name = "aperiodic";
  bad.support_bound = 3;
  bad.fixed_divisor_poly = parse_poly("y");
  bad.c = 1.0;
  bad.f = [](std::uint64_t p, std::int64_t n) {
    if (p != 2) return 1.0;
    return n < 50 ? 1.0 : 0.5;  // not 2-periodic
  };
  CHECK_THROWS_AS(mean_product(bad, 1000), ContractError);

  LocalFunctionSpec far;
  far.name = "too-far";
  far.support_bound = 3;
  far.fixed_divisor_poly = parse_poly("y");
  far.c = 0.0;
  far.f = [](std::uint64_t p, std::int64_t) { return p == 3 ? 3.0 : 1.0; };
  CHECK_THROWS_AS(mean_product(far, 1000), ContractError);
}

TEST_CASE("catalog specs pass their own contracts") {
  for (const auto& spec : local_spec_catalog()) CHECK_NOTHROW(contract_check(spec));
}

TEST_CASE("correlation factorization single factor") {
  auto rep = correlation_factorization(1, {0}, {5.0}, 100000);
  CHECK(rep.factored == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(rep.empirical - 1.0) < 0.01);
}

TEST_CASE("correlation factorization of a shifted pair") {
  // k=2, Q=1, a=(0,2), w=3: factored = prod_{p<=3} E_n Lambda_p(n)Lambda_p(n+2)
  auto rep = correlation_factorization(1, {0, 2}, {3.0, 3.0}, 200000);
  // p=2: (2/1)^2 * (1/2) = 2; p=3: (3/2)^2 * (1/3) = 3/4  -> product 3/2
  CHECK(rep.factored == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(rep.gap < 0.01);
}

TEST_CASE("annihilating shift forces zero") {
  // Q=2, a=0: 2 | Qn + 0 always, so the p=2 factor is 0 and so is the sum
  auto rep = correlation_factorization(2, {0}, {3.0}, 10000);
  CHECK(rep.factored == 0.0);
  CHECK(rep.empirical == 0.0);
}

TEST_CASE("per-prime factor is shift invariant when p does not divide Q") {
  // replacing a_j by a_j + Q t permutes the residues n -> n + t
  auto base = correlation_factorization(5, {1, 3}, {3.0, 3.0}, 50000);
  auto shifted = correlation_factorization(5, {1 + 5 * 7, 3 + 5 * 7}, {3.0, 3.0}, 50000);
  CHECK(base.factored == doctest::Approx(shifted.factored).epsilon(1e-12));
}

TEST_CASE("gap shrinks over a doubling ladder") {
  auto catalog = local_spec_catalog();
  for (const auto& spec : catalog) {
    auto small = mean_product(spec, 100000);
    auto large = mean_product(spec, 400000);
    CHECK(small.gap <= 0.02);
    // soft trend; all catalog specs have period-driven gaps ~ c/N
    CHECK(large.gap <= small.gap + 1e-12);
  }
}

TEST_CASE("rankin tail decreases in s, exactly") {
  Poly p = parse_poly("y^2 + 2*y");
  Rational prev = -1;
  for (double s : {3.0, 2.0, 1.0, 0.5}) {
    Rational tail = rankin_tail(13.0, 2, p, 17, s);
    if (prev >= 0) CHECK(tail >= prev);
    prev = tail;
    CHECK(tail >= 0);
  }
  // threshold above W ends the tail
  CHECK(rankin_tail(5.0, 2, p, 3, 4.0) == Rational(0));
}
