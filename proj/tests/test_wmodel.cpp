#include "doctest.h"
#include "polypat/local_density.hpp"
#include "polypat/wmodel.hpp"

#include <cmath>

using namespace polypat;

TEST_CASE("siegel config") {
  auto cfg = make_siegel_config(3);
  CHECK(cfg.W == 6);
  CHECK(cfg.level_density == doctest::Approx(3.0));
  auto cfg5 = make_siegel_config(5);
  CHECK(cfg5.W == 30);
  CHECK(cfg5.level_density == doctest::Approx(30.0 / 8.0));
  auto cfg10 = make_siegel_config(10.0);
  CHECK(cfg10.W == 210);
  CHECK_THROWS_AS(make_siegel_config(1.5), ContractError);
  // injected character must have conductor <= w
  CHECK_THROWS_AS(make_siegel_config(3, -8, 0.9), ContractError);
  CHECK_THROWS_AS(make_siegel_config(5, -3, 1.5), ContractError);
  auto with_chi = make_siegel_config(5, -3, 0.99);
  CHECK(with_chi.character.has_value());
}

TEST_CASE("lambda_W values") {
  auto cfg = make_siegel_config(3);
  CHECK(lambda_W(cfg, 5) == doctest::Approx(3.0));
  CHECK(lambda_W(cfg, 4) == 0.0);
  auto cfg5 = make_siegel_config(5);
  CHECK(lambda_W(cfg5, 7) == doctest::Approx(3.75));
  CHECK(lambda_W(cfg5, -7) == lambda_W(cfg5, 7));
  CHECK_THROWS_AS(lambda_W(cfg5, 0), std::domain_error);
}

TEST_CASE("truncated lambda_W") {
  auto cfg = make_siegel_config(5);
  // V = 1: only d = 1 survives
  for (std::int64_t n : {1, 2, 3, 30, 77}) {
    CHECK(lambda_W_truncated(cfg, n, 1.0) == doctest::Approx(cfg.level_density));
  }
  // divisors of gcd(6, 30) up to 3: 1, 2, 3 -> 1 - 1 - 1 = -1
  CHECK(lambda_W_truncated(cfg, 6, 3.0) == doctest::Approx(-30.0 / 8.0));

  // Moebius inversion: exact equality (identical doubles) once V >= n
  for (double w : {3.0, 5.0, 7.0, 13.0}) {
    auto c = make_siegel_config(w);
    for (std::int64_t n = 1; n <= 2000; ++n) {
      REQUIRE(lambda_W_truncated(c, n, static_cast<double>(n)) == lambda_W(c, n));
      REQUIRE(lambda_W_truncated(c, n, static_cast<double>(n) + 17.5) == lambda_W(c, n));
    }
  }
}

TEST_CASE("siegel model with and without character") {
  auto plain = make_siegel_config(5);
  for (std::int64_t n = 1; n <= 500; ++n)
    REQUIRE(siegel_lambda(plain, n) == lambda_W(plain, n));

  auto cfg = make_siegel_config(5, -3, 0.99);
  // gcd(n, W) > 1 stays 0 regardless of the character
  CHECK(siegel_lambda(cfg, 10) == 0.0);
  // chi(7) = kronecker(-3, 7) = 1 -> factor (1 - 7^{-0.01})
  double expect = lambda_W(cfg, 7) * (1.0 - std::pow(7.0, -0.01));
  CHECK(siegel_lambda(cfg, 7) == doctest::Approx(expect));
  // chi(n) = -1 pushes the model above lambda_W
  int chi_val = (*cfg.character)(11);
  REQUIRE(chi_val == -1);
  CHECK(siegel_lambda(cfg, 11) > lambda_W(cfg, 11));
}

TEST_CASE("E_{n mod p} Lambda_p(n) = 1 exactly") {
  for (std::uint64_t p : primes_up_to(100)) {
    Rational avg = 0;
    for (std::uint64_t r = 0; r < p; ++r)
      avg += lambda_p(p, static_cast<std::int64_t>(r));
    avg /= p;
    REQUIRE(avg == Rational(1));
  }
}

TEST_CASE("mean value of lambda_W approaches 1") {
  auto cfg = make_siegel_config(10);
  const std::uint64_t n = 1000000;
  KahanSum s;
  for (std::uint64_t m = 1; m <= n; ++m) s.add(lambda_W(cfg, static_cast<std::int64_t>(m)));
  double mean = s.value() / static_cast<double>(n);
  CHECK(std::abs(mean - 1.0) < 0.01);
}

TEST_CASE("ap discrepancy at desk scale") {
  const std::uint64_t n = 20000;
  auto table = ArithmeticTable::build(n, static_cast<unsigned>(ArithFn::Lambda));
  auto cfg = make_siegel_config(5);
  auto rep = ap_discrepancy(cfg, n, table);
  CHECK(rep.max_value < 0.05 * static_cast<double>(n));
  CHECK(rep.regime_ok);
  CHECK(rep.cells.size() == 1 + 2 + 3 + 4 + 5);
  // classes with gcd(a, q) > 1 carry only prime-power dust: O((log N)^2)
  for (const auto& cell : rep.cells) {
    if (cell.q == 4 && cell.a == 2) {
      double lg = std::log(static_cast<double>(n));
      CHECK(std::abs(cell.sum) < 3.0 * lg * lg);
    }
  }
}

TEST_CASE("truncation moments") {
  auto cfg = make_siegel_config(5);
  // w^s beyond W kills every divisor
  auto rep = truncation_moment(cfg, 100, 4.0, 2.0);
  CHECK(rep.lhs == 0.0);

  // exhaustive oracle at w=5, N=100, s=1, C=2: divisors of gcd(n,30) > 5
  auto r2 = truncation_moment(cfg, 100, 1.0, 2.0);
  double expect = 0.0;
  for (std::uint64_t n = 1; n <= 100; ++n) {
    int sum = 0;
    for (std::uint64_t d : {6ull, 10ull, 15ull, 30ull}) {
      if (n % d == 0) {
        unsigned omega = d == 30 ? 3 : 2;
        sum += (omega & 1) ? -1 : 1;
      }
    }
    expect += static_cast<double>(sum * sum);
  }
  CHECK(r2.lhs == doctest::Approx(expect));

  // lhs/reference stays bounded over s (trend table)
  double prev_lhs = 1e300;
  for (double s : {1.0, 2.0, 3.0}) {
    auto r = truncation_moment(cfg, 5000, s, 2.0);
    CHECK(r.lhs <= prev_lhs);
    CHECK(r.lhs <= r.reference);
    prev_lhs = r.lhs;
  }
}

TEST_CASE("gowers norm of the model error") {
  const std::uint64_t n = 4096;
  auto table = ArithmeticTable::build(n, static_cast<unsigned>(ArithFn::Lambda));
  auto cfg = make_siegel_config(2);
  auto res = gowers_of_error(cfg, n, 2, table);
  CHECK(res.normalised > 0.0);
  CHECK(res.normalised < 1.0);

  // replacing the model by Lambda itself gives zero
  Series self;
  self.base = 1;
  self.v.assign(n, 0.0);
  auto zero = interval_norm(self, 1, static_cast<std::int64_t>(n), 2);
  CHECK(zero.normalised == 0.0);

  // fft path equals recursive path on the same error vector
  Series f;
  f.base = 1;
  f.v.resize(512);
  for (std::uint64_t m = 1; m <= 512; ++m)
    f.v[m - 1] = table.lambda(static_cast<std::int64_t>(m)) -
                 siegel_lambda(cfg, static_cast<std::int64_t>(m));
  auto a = interval_norm(f, 1, 512, 2, GowersMethod::fft_u2);
  auto b = interval_norm(f, 1, 512, 2, GowersMethod::recursive);
  CHECK(std::abs(a.normalised - b.normalised) <=
        1e-9 * std::max(a.normalised, b.normalised));

  // The norm decreases in w (the bound depends on w, not N); the N-trend at
  // w=2 is flat-to-slightly-increasing at these scales, so the frozen
  // expectations are the w-monotonicity and the verified N-trend at w=5.
  double prev_w = 1e300;
  for (double w : {2.0, 3.0, 5.0}) {
    auto r = gowers_of_error(make_siegel_config(w), n, 2, table);
    CHECK(r.normalised < prev_w);
    prev_w = r.normalised;
  }
  auto w5 = make_siegel_config(5);
  CHECK(gowers_of_error(w5, 4096, 2, table).normalised <
        gowers_of_error(w5, 1024, 2, table).normalised);
}
