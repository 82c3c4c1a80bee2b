#ifndef POLYPAT_GOWERS_HPP
#define POLYPAT_GOWERS_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "polypat/util.hpp"

namespace polypat {

// Finitely supported f: Z -> C, stored as values on [base, base+size).
struct Series {
  std::int64_t base = 0;
  std::vector<std::complex<double>> v;

  std::size_t size() const { return v.size(); }
  std::int64_t lo() const { return base; }
  std::int64_t hi() const { return base + static_cast<std::int64_t>(v.size()); }  // exclusive

  std::complex<double> at(std::int64_t n) const {
    if (n < lo() || n >= hi()) return {0.0, 0.0};
    return v[static_cast<std::size_t>(n - base)];
  }

  static Series ones(std::int64_t lo, std::int64_t hi_inclusive);
};

enum class GowersMethod { naive, recursive, fft_u2, automatic };

struct GowersBudget {
  // Upper bound on the estimated number of inner-loop products.
  std::uint64_t max_ops = std::uint64_t(1) << 33;
};

// Unnormalised U~^s(Z) norm: the 2^s-th root of the cube-configuration sum.
double unnormalised_norm(const Series& f, unsigned s,
                         GowersMethod method = GowersMethod::automatic,
                         const GowersBudget& budget = {});

struct GowersResult {
  unsigned s = 0;
  std::int64_t interval_lo = 0;
  std::int64_t interval_hi = 0;  // inclusive
  double unnormalised = 0.0;     // of f restricted to the interval
  double normalised = 0.0;
  GowersMethod method = GowersMethod::automatic;
};

// ||f||_{U^s(I)} = ||f 1_I|| / ||1_I|| with I = [lo, hi] (integer endpoints,
// inclusive).
GowersResult interval_norm(const Series& f, std::int64_t lo, std::int64_t hi,
                           unsigned s, GowersMethod method = GowersMethod::automatic,
                           const GowersBudget& budget = {});

// ||1_{[L]}||^{2^s} in closed form (counts cube configurations inside the
// interval); used as the interval-norm denominator.
double ones_norm_power(std::uint64_t length, unsigned s);

struct GcsResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

// Gowers-Cauchy-Schwarz: |sum_{x,h} prod_w f_w(x + w.h)| vs prod ||f_w||.
// fs has 2^s entries ordered by the bit pattern of w (bit i = w_{i+1}).
GcsResult gcs_check(const std::vector<Series>& fs, unsigned s,
                    const GowersBudget& budget = {});

// mu_H(h) = #{(h1,h2) in [H]^2 : h1-h2 = h} / floor(H)^2, exact.
Rational mu_H(double H, std::int64_t h);

}  // namespace polypat

#endif
