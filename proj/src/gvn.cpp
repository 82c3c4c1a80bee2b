#include "polypat/gvn.hpp"

#include <cmath>
#include <random>

namespace polypat {

namespace {

void require_bounded(const Series& f, const char* label) {
  for (const auto& z : f.v)
    if (std::abs(z) > 1.0 + 1e-12)
      throw ContractError(std::string(label) + " is not 1-bounded");
}

}  // namespace

GvnReport gvn_evaluate(const PolyFamily& fam, std::uint64_t n_scale,
                       const Series& theta, const std::vector<Series>& fs,
                       unsigned s, unsigned k_display, const GowersBudget& budget) {
  if (fs.size() != fam.k() + 1)
    throw ContractError("gvn_evaluate: need f_0..f_k, one more than the family size");
  if (s < 2 || s > 3) throw ContractError("gvn_evaluate: s must be 2 or 3");
  require_bounded(theta, "theta");
  for (std::size_t j = 0; j < fs.size(); ++j) require_bounded(fs[j], "f_j");

  int d = std::max(fam.max_degree(), 0);
  Int nd_big = 1;
  for (int i = 0; i < d; ++i) nd_big *= n_scale;
  // smallest C with every support inside [-C N^d, C N^d]
  Int c_big = 1;
  for (const auto& f : fs) {
    if (f.size() == 0) continue;
    Int lo = -Int(f.lo());
    Int hi = Int(f.hi()) - 1;
    Int m = std::max(lo, hi);
    if (m > 0) {
      Int c = (m + nd_big - 1) / nd_big;
      c_big = std::max(c_big, c);
    }
  }
  if (c_big > 64)
    throw ContractError("function support exceeds [-C N^d, C N^d] for C <= 64");
  std::int64_t c = c_big.convert_to<std::int64_t>();
  std::int64_t nd = nd_big.convert_to<std::int64_t>();

  std::vector<std::vector<std::int64_t>> sh(fam.k());
  for (std::size_t j = 0; j < fam.k(); ++j) {
    sh[j].resize(n_scale);
    for (std::uint64_t m = 1; m <= n_scale; ++m)
      sh[j][m - 1] = fam.polys[j].eval(Int(m)).convert_to<std::int64_t>();
  }

  std::complex<double> total(0.0, 0.0);
  for (std::uint64_t m = 1; m <= n_scale; ++m) {
    std::complex<double> th = theta.at(static_cast<std::int64_t>(m));
    if (th.real() == 0.0 && th.imag() == 0.0) continue;
    std::complex<double> inner(0.0, 0.0);
    for (std::int64_t n = fs[0].lo(); n < fs[0].hi(); ++n) {
      std::complex<double> prod = fs[0].at(n);
      if (prod.real() == 0.0 && prod.imag() == 0.0) continue;
      for (std::size_t j = 0; j < fam.k(); ++j) {
        prod *= fs[j + 1].at(n + sh[j][m - 1]);
        if (prod.real() == 0.0 && prod.imag() == 0.0) break;
      }
      inner += prod;
    }
    total += th * inner;
  }

  GvnReport rep;
  rep.family = family_to_string(fam);
  rep.n_scale = n_scale;
  rep.s = s;
  rep.k_display = k_display;
  rep.support_c = c;
  double norm = 1.0;
  for (int i = 0; i < d + 1; ++i) norm *= static_cast<double>(n_scale);
  rep.lhs = std::abs(total) / norm;
  rep.gowers_value =
      interval_norm(fs.back(), -c * nd, c * nd, s, GowersMethod::automatic, budget)
          .normalised;
  return rep;
}

Series series_ones(std::int64_t lo, std::int64_t hi_inclusive) {
  return Series::ones(lo, hi_inclusive);
}

Series series_random_pm1(std::int64_t lo, std::int64_t hi_inclusive, std::uint64_t seed) {
  Series f;
  f.base = lo;
  if (hi_inclusive < lo) return f;
  std::mt19937_64 rng(seed);
  f.v.resize(static_cast<std::size_t>(hi_inclusive - lo + 1));
  for (auto& z : f.v) z = (rng() & 1) ? 1.0 : -1.0;
  return f;
}

Series series_modulated(const Series& f, double alpha) {
  const double two_pi = 2.0 * std::acos(-1.0);
  Series g = f;
  for (std::size_t i = 0; i < g.v.size(); ++i) {
    double ang = two_pi * alpha *
                 static_cast<double>(g.base + static_cast<std::int64_t>(i));
    g.v[i] *= std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return g;
}

}  // namespace polypat
