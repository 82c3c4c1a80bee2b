#include "doctest.h"
#include "polypat/gvn.hpp"

#include <cmath>

using namespace polypat;

TEST_CASE("zero f_k gives zero on both sides") {
  auto fam = parse_family("0; y");
  Series theta = series_ones(1, 20);
  Series f0 = series_ones(-40, 40);
  Series f1 = series_ones(-40, 40);
  Series f2;
  f2.base = -40;
  f2.v.assign(81, 0.0);
  auto rep = gvn_evaluate(fam, 20, theta, {f0, f1, f2}, 2);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.gowers_value == 0.0);
}

TEST_CASE("all-ones weights line up with the trivial bound") {
  auto fam = parse_family("0; y");
  const std::uint64_t n = 20;
  Series theta = series_ones(1, static_cast<std::int64_t>(n));
  Series f = series_ones(-40, 40);
  auto rep = gvn_evaluate(fam, n, theta, {f, f, f}, 2);
  CHECK(rep.gowers_value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.lhs > 0.0);
  CHECK(rep.lhs <= 1.0 * (2 * 40 + 1) / n + 1e-9);  // |support| / N^{d+1} at most
}

TEST_CASE("random signs: both sides reported, lhs small") {
  auto fam = parse_family("0; y^2");
  const std::uint64_t n = 50;
  Series theta = series_ones(1, static_cast<std::int64_t>(n));
  std::int64_t nd = 2500;
  Series f0 = series_random_pm1(-3 * nd, 3 * nd, 11);
  Series f1 = series_random_pm1(-3 * nd, 3 * nd, 22);
  Series f2 = series_random_pm1(-3 * nd, 3 * nd, 33);
  auto rep = gvn_evaluate(fam, n, theta, {f0, f1, f2}, 2);
  CHECK(rep.lhs < 1.0);
  CHECK(rep.gowers_value > 0.0);
  CHECK(rep.support_c >= 3);
}

TEST_CASE("triangle: |theta| can only increase the average") {
  auto fam = parse_family("0; y");
  const std::uint64_t n = 30;
  Series theta;
  theta.base = 1;
  theta.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) theta.v[i] = (i % 2) ? -1.0 : 1.0;
  Series f0 = series_random_pm1(-60, 60, 5);
  auto osc = gvn_evaluate(fam, n, theta, {f0, f0, f0}, 2);
  // sum over m of |inner term| dominates |sum theta(m) inner term|
  double abs_total = 0.0;
  for (std::uint64_t m = 1; m <= n; ++m) {
    Series th;
    th.base = static_cast<std::int64_t>(m);
    th.v = {1.0};
    abs_total += gvn_evaluate(fam, n, th, {f0, f0, f0}, 2).lhs;
  }
  CHECK(osc.lhs <= abs_total + 1e-12);
}

TEST_CASE("modulating f_k leaves the gowers side unchanged") {
  auto fam = parse_family("0; y");
  const std::uint64_t n = 25;
  Series theta = series_ones(1, static_cast<std::int64_t>(n));
  Series f = series_random_pm1(-50, 50, 77);
  auto base = gvn_evaluate(fam, n, theta, {f, f, f}, 2);
  Series mod = series_modulated(f, 0.3183);
  auto twisted = gvn_evaluate(fam, n, theta, {f, f, mod}, 2);
  CHECK(base.gowers_value ==
        doctest::Approx(twisted.gowers_value).epsilon(1e-9));
}

TEST_CASE("support and boundedness violations") {
  auto fam = parse_family("0; y");
  Series theta = series_ones(1, 10);
  Series huge = series_ones(-100000, 100000);
  CHECK_THROWS_AS(gvn_evaluate(fam, 10, theta, {huge, huge, huge}, 2), ContractError);
  Series loud = series_ones(-10, 10);
  loud.v[0] = 3.0;
  Series ok = series_ones(-10, 10);
  CHECK_THROWS_AS(gvn_evaluate(fam, 10, theta, {ok, ok, loud}, 2), ContractError);
}
