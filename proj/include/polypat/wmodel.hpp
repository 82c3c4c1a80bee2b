#ifndef POLYPAT_WMODEL_HPP
#define POLYPAT_WMODEL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "polypat/arith_table.hpp"
#include "polypat/charsum.hpp"
#include "polypat/gowers.hpp"
#include "polypat/util.hpp"

namespace polypat {

// W-trick configuration, optionally carrying a synthetic real character and
// zero surrogate. No genuine Siegel zero exists at any computable scale, so
// the default (chi = 0, beta = 1) is the production path and the injection
// hook exists to exercise the correction term.
struct SiegelConfig {
  double w = 2.0;
  Int W = 2;                          // prod_{p <= w} p, exact
  std::vector<std::uint64_t> primes;  // p <= w
  double level_density = 2.0;         // W/phi(W) as double
  Rational level_density_exact = 2;   // W/phi(W)
  std::optional<RealCharacter> character;
  double beta_tilde = 1.0;
};

SiegelConfig make_siegel_config(double w,
                                std::optional<std::int64_t> discriminant = std::nullopt,
                                double beta_tilde = 1.0);

// Lambda_W(n) = prod_{p|W} Lambda_p(n) = W/phi(W) on gcd(n,W)=1, else 0.
double lambda_W(const SiegelConfig& cfg, std::int64_t n);

// Integer part of the truncated divisor sum: sum_{d | (n,W), d <= V} mu(d).
// Exposed separately so the Moebius-inversion identity can be tested exactly.
int truncated_sieve_weight(const SiegelConfig& cfg, std::int64_t n, double v);

// Lambda_{W,<=V}(n) = W/phi(W) * sum_{d|W, d<=V} mu(d) 1_{d|n}.
double lambda_W_truncated(const SiegelConfig& cfg, std::int64_t n, double v);

// Siegel model: Lambda_W(n) (1 - chi(|n|) |n|^{beta-1}).
double siegel_lambda(const SiegelConfig& cfg, std::int64_t n);

struct ApCell {
  std::uint64_t q = 0;
  std::uint64_t a = 0;  // residue class, 1..q
  double sum = 0.0;
};

struct ApDiscrepancyReport {
  double max_value = 0.0;
  std::uint64_t argmax_q = 0;
  std::uint64_t argmax_a = 0;
  std::vector<ApCell> cells;
  double reference = 0.0;  // N exp(-sqrt(log N)), the c=1 yardstick
  bool regime_ok = true;   // w <= exp(sqrt(log N))
};

// max over q <= w, a mod q of |sum_{m<=N, m=a(q)} (Lambda - Lambda~_W)(m)|.
ApDiscrepancyReport ap_discrepancy(const SiegelConfig& cfg, std::uint64_t n,
                                   const ArithmeticTable& table);

struct MomentReport {
  double lhs = 0.0;        // sum_{n<=N} |sum_{d|W, d>w^s} mu(d) 1_{d|n}|^C
  double reference = 0.0;  // N e^{-s} (log w)^{2^{C+4}}
  double s_exponent = 0.0;
  double c_exponent = 0.0;
};

MomentReport truncation_moment(const SiegelConfig& cfg, std::uint64_t n,
                               double s_exponent, double c_exponent);

// ||Lambda - Lambda~_W||_{U^s[N]}, exploratory.
GowersResult gowers_of_error(const SiegelConfig& cfg, std::uint64_t n, unsigned s,
                             const ArithmeticTable& table,
                             const GowersBudget& budget = {});

}  // namespace polypat

#endif
