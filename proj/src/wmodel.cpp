#include "polypat/wmodel.hpp"

#include <cmath>

namespace polypat {

SiegelConfig make_siegel_config(double w, std::optional<std::int64_t> discriminant,
                                double beta_tilde) {
  if (w < 2.0) throw ContractError("siegel config requires w >= 2");
  SiegelConfig cfg;
  cfg.w = w;
  cfg.primes = primes_up_to(static_cast<std::uint64_t>(std::floor(w)));
  cfg.W = 1;
  Rational density = 1;
  for (std::uint64_t p : cfg.primes) {
    cfg.W *= p;
    density *= Rational(Int(p), Int(p) - 1);
  }
  cfg.level_density_exact = density;
  cfg.level_density = to_double(density);
  if (discriminant) {
    RealCharacter chi = make_real_character(*discriminant);
    if (static_cast<double>(chi.modulus) > w)
      throw ContractError("injected character conductor " + std::to_string(chi.modulus) +
                          " exceeds the level w");
    if (!(beta_tilde > 0.0 && beta_tilde <= 1.0))
      throw ContractError("beta_tilde must lie in (0, 1]");
    cfg.character = chi;
    cfg.beta_tilde = beta_tilde;
  }
  return cfg;
}

double lambda_W(const SiegelConfig& cfg, std::int64_t n) {
  if (n == 0) throw std::domain_error("lambda_W undefined at 0");
  std::uint64_t a = static_cast<std::uint64_t>(n < 0 ? -n : n);
  for (std::uint64_t p : cfg.primes)
    if (a % p == 0) return 0.0;
  return cfg.level_density;
}

int truncated_sieve_weight(const SiegelConfig& cfg, std::int64_t n, double v) {
  if (n == 0) throw std::domain_error("lambda_W undefined at 0");
  if (v < 1.0) throw ContractError("truncation level V must be >= 1");
  std::uint64_t a = static_cast<std::uint64_t>(n < 0 ? -n : n);
  std::vector<std::uint64_t> divs;  // primes of (n, W)
  for (std::uint64_t p : cfg.primes)
    if (a % p == 0) divs.push_back(p);
  if (divs.size() > 22)
    throw CapacityError("divisor enumeration over " + std::to_string(divs.size()) +
                        " primes exceeds budget");
  int sum = 0;
  std::uint64_t subsets = std::uint64_t(1) << divs.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::uint64_t d = 1;
    int bits = 0;
    for (std::size_t i = 0; i < divs.size(); ++i) {
      if (mask & (std::uint64_t(1) << i)) {
        d *= divs[i];
        ++bits;
      }
    }
    if (static_cast<long double>(d) <= static_cast<long double>(v))
      sum += (bits & 1) ? -1 : 1;
  }
  return sum;
}

double lambda_W_truncated(const SiegelConfig& cfg, std::int64_t n, double v) {
  return cfg.level_density * truncated_sieve_weight(cfg, n, v);
}

double siegel_lambda(const SiegelConfig& cfg, std::int64_t n) {
  double lw = lambda_W(cfg, n);
  if (lw == 0.0 || !cfg.character) return lw;
  std::int64_t a = n < 0 ? -n : n;
  int chi = (*cfg.character)(a);
  if (chi == 0) return lw;
  double corr = 1.0 - static_cast<double>(chi) *
                          std::pow(static_cast<double>(a), cfg.beta_tilde - 1.0);
  return lw * corr;
}

ApDiscrepancyReport ap_discrepancy(const SiegelConfig& cfg, std::uint64_t n,
                                   const ArithmeticTable& table) {
  if (table.upper_bound() < n) throw std::out_of_range("table does not cover N");
  ApDiscrepancyReport rep;
  std::uint64_t qmax = static_cast<std::uint64_t>(std::floor(cfg.w));
  rep.regime_ok =
      cfg.w <= std::exp(std::sqrt(std::log(static_cast<double>(std::max<std::uint64_t>(n, 3)))));
  rep.reference = static_cast<double>(n) *
                  std::exp(-std::sqrt(std::log(static_cast<double>(std::max<std::uint64_t>(n, 3)))));

  // one pass, accumulating every progression class q <= w
  std::vector<std::vector<KahanSum>> cells(qmax + 1);
  for (std::uint64_t q = 1; q <= qmax; ++q) cells[q].assign(q, KahanSum{});
  for (std::uint64_t m = 1; m <= n; ++m) {
    double diff = table.lambda(static_cast<std::int64_t>(m)) -
                  siegel_lambda(cfg, static_cast<std::int64_t>(m));
    if (diff == 0.0) continue;
    for (std::uint64_t q = 1; q <= qmax; ++q) cells[q][m % q].add(diff);
  }
  for (std::uint64_t q = 1; q <= qmax; ++q) {
    for (std::uint64_t r = 0; r < q; ++r) {
      double s = cells[q][r].value();
      std::uint64_t residue = r == 0 ? q : r;  // report classes as 1..q
      rep.cells.push_back({q, residue, s});
      if (std::abs(s) > rep.max_value) {
        rep.max_value = std::abs(s);
        rep.argmax_q = q;
        rep.argmax_a = residue;
      }
    }
  }
  return rep;
}

MomentReport truncation_moment(const SiegelConfig& cfg, std::uint64_t n,
                               double s_exponent, double c_exponent) {
  if (s_exponent < 1.0) throw ContractError("truncation_moment requires s >= 1");
  MomentReport rep;
  rep.s_exponent = s_exponent;
  rep.c_exponent = c_exponent;
  double threshold = std::pow(cfg.w, s_exponent);

  KahanSum lhs;
  for (std::uint64_t m = 1; m <= n; ++m) {
    std::vector<std::uint64_t> divs;
    for (std::uint64_t p : cfg.primes)
      if (m % p == 0) divs.push_back(p);
    int sum = 0;
    std::uint64_t subsets = std::uint64_t(1) << divs.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      std::uint64_t d = 1;
      int bits = 0;
      for (std::size_t i = 0; i < divs.size(); ++i) {
        if (mask & (std::uint64_t(1) << i)) {
          d *= divs[i];
          ++bits;
        }
      }
      if (static_cast<long double>(d) > static_cast<long double>(threshold))
        sum += (bits & 1) ? -1 : 1;
    }
    if (sum != 0) lhs.add(std::pow(std::abs(static_cast<double>(sum)), c_exponent));
  }
  rep.lhs = lhs.value();
  rep.reference = static_cast<double>(n) * std::exp(-s_exponent) *
                  std::pow(std::log(cfg.w), std::pow(2.0, c_exponent + 4.0));
  return rep;
}

GowersResult gowers_of_error(const SiegelConfig& cfg, std::uint64_t n, unsigned s,
                             const ArithmeticTable& table, const GowersBudget& budget) {
  if (table.upper_bound() < n) throw std::out_of_range("table does not cover N");
  Series f;
  f.base = 1;
  f.v.resize(n);
  for (std::uint64_t m = 1; m <= n; ++m)
    f.v[m - 1] = table.lambda(static_cast<std::int64_t>(m)) -
                 siegel_lambda(cfg, static_cast<std::int64_t>(m));
  return interval_norm(f, 1, static_cast<std::int64_t>(n), s, GowersMethod::automatic,
                       budget);
}

}  // namespace polypat
