#include "doctest.h"
#include "polypat/local_density.hpp"

#include <sstream>

using namespace polypat;

TEST_CASE("lambda_p values") {
  CHECK(lambda_p(5, 10) == Rational(0));
  CHECK(lambda_p(5, 1) == Rational(5, 4));
  CHECK(lambda_p(2, -3) == Rational(2));
  CHECK_THROWS_AS(lambda_p(6, 1), ContractError);
}

TEST_CASE("beta_p pinned values") {
  auto pair01 = parse_family("0; y");
  CHECK(beta_p(pair01, 7).value == Rational(1));
  auto triple = parse_family("0; y; 2*y");
  CHECK(beta_p(triple, 3).value == Rational(3, 4));
  CHECK(beta_p(triple, 5).value == Rational(15, 16));
}

TEST_CASE("root-counting path equals the double-loop reference") {
  for (const char* fam_text : {"0; y", "0; y; 2*y", "0; y^2", "y^2 - y; 3*y^2"}) {
    auto fam = parse_family(fam_text);
    for (std::uint64_t p : primes_up_to(50))
      REQUIRE(beta_p(fam, p).value == beta_p_reference(fam, p).value);
  }
}

TEST_CASE("beta_p_fixed examples") {
  auto fam = parse_family("0; y");
  CHECK(beta_p_fixed(fam, 3, LocalFactor::Kind::fixed_m, 0).value == Rational(3, 2));
  CHECK(beta_p_fixed(fam, 3, LocalFactor::Kind::fixed_m, 1).value == Rational(3, 4));
  // single excluded residue when all members collide at m
  auto wide = parse_family("0; 6*y; 10*y");
  CHECK(beta_p_fixed(wide, 3, LocalFactor::Kind::fixed_m, 3).value ==
        Rational(Int(27) * 2, Int(8) * 3));  // (3/2)^3 * (2/3)
}

TEST_CASE("averaging beta_p(m) over m recovers beta_p") {
  for (const char* fam_text : {"0; y", "0; y; 2*y", "0; y^2"}) {
    auto fam = parse_family(fam_text);
    for (std::uint64_t p : primes_up_to(50)) {
      Rational avg_m = 0, avg_n = 0;
      for (std::uint64_t r = 0; r < p; ++r) {
        avg_m += beta_p_fixed(fam, p, LocalFactor::Kind::fixed_m,
                              static_cast<std::int64_t>(r))
                     .value;
        avg_n += beta_p_fixed(fam, p, LocalFactor::Kind::fixed_n,
                              static_cast<std::int64_t>(r))
                     .value;
      }
      avg_m /= p;
      avg_n /= p;
      Rational joint = beta_p(fam, p).value;
      REQUIRE(avg_m == joint);
      REQUIRE(avg_n == joint);
    }
  }
}

TEST_CASE("singular series") {
  auto pair01 = parse_family("0; y");
  auto s = singular_series(pair01, 100);
  CHECK(s.value == 1.0);  // every factor is exactly 1
  CHECK_FALSE(s.obstruction_prime.has_value());

  auto triple = parse_family("0; y; 2*y");
  auto s3 = singular_series(triple, 5);
  REQUIRE(s3.per_prime.size() == 3);
  CHECK(s3.per_prime[1].value == Rational(3, 4));
  CHECK(s3.per_prime[2].value == Rational(15, 16));
  double expect = to_double(beta_p(triple, 2).value) * (3.0 / 4.0) * (15.0 / 16.0);
  CHECK(s3.value == doctest::Approx(expect).epsilon(1e-15));

  auto s2 = singular_series(triple, 2);
  CHECK(s2.per_prime.size() == 1);

  // obstruction: {0, y, y+1} hits a residue mod 2 for every (m, n)
  auto blocked = parse_family("0; y; y + 1");
  auto sb = singular_series(blocked, 50);
  CHECK(sb.value == 0.0);
  REQUIRE(sb.obstruction_prime.has_value());
  CHECK(*sb.obstruction_prime == 2);
}

TEST_CASE("tail constant reflects the 1/p^2 decay") {
  auto fam = parse_family("0; y; 2*y");
  auto s = singular_series(fam, 2000);
  CHECK(s.tail_constant > 0.0);
  CHECK(s.tail_constant < 10.0);  // empirical constant for this family is ~3
}

TEST_CASE("parallel and serial singular series agree bitwise") {
  auto fam = parse_family("0; y; 2*y");
  auto a = singular_series(fam, 500, 1);
  auto b = singular_series(fam, 500, 4);
  CHECK(a.value == b.value);
  REQUIRE(a.per_prime.size() == b.per_prime.size());
  for (std::size_t i = 0; i < a.per_prime.size(); ++i)
    CHECK(a.per_prime[i].value == b.per_prime[i].value);
}

TEST_CASE("tail products of beta_p(m) tighten as the lower cutoff grows") {
  auto fam = parse_family("0; y; 2*y");
  const std::int64_t m = 7;
  // prod_{lo < p <= hi} beta_p(m) should approach 1 monotonically in lo
  double prev_gap = 1e9;
  for (std::uint64_t lo : {10ull, 40ull, 160ull, 640ull}) {
    double prod = 1.0;
    for (std::uint64_t p : primes_up_to(2000))
      if (p > lo)
        prod *= to_double(beta_p_fixed(fam, p, LocalFactor::Kind::fixed_m, m).value);
    double gap = std::abs(prod - 1.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("csv emitter") {
  auto fam = parse_family("0; y; 2*y");
  auto s = singular_series(fam, 5);
  std::ostringstream out;
  write_local_factor_csv(out, s.per_prime);
  CHECK(out.str().find("p,numerator,denominator,value") == 0);
  CHECK(out.str().find("3,3,4,") != std::string::npos);
  CHECK(out.str().find("5,15,16,") != std::string::npos);
}
