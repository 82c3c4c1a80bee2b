#include "polypat/local_density.hpp"

#include <algorithm>
#include <ostream>

namespace polypat {

namespace {

void require_prime(std::uint64_t p) {
  if (!is_prime_u64(p)) throw ContractError(std::to_string(p) + " is not prime");
}

Int int_pow(Int base, unsigned e) {
  Int r = 1;
  while (e--) r *= base;
  return r;
}

// (p/(p-1))^k * count / p^free_vars
Rational scaled_count(std::uint64_t p, std::size_t k, const Int& count, unsigned free_vars) {
  Int num = int_pow(Int(p), static_cast<unsigned>(k)) * count;
  Int den = int_pow(Int(p) - 1, static_cast<unsigned>(k)) * int_pow(Int(p), free_vars);
  return Rational(num, den);
}

// Residues P_j(m) mod p for all j.
std::vector<std::uint64_t> residues_at(const PolyFamily& fam, std::uint64_t m,
                                       std::uint64_t p) {
  std::vector<std::uint64_t> r(fam.k());
  for (std::size_t j = 0; j < fam.k(); ++j) r[j] = fam.polys[j].eval_mod(m, p);
  return r;
}

std::uint64_t distinct_count(std::vector<std::uint64_t>& r) {
  std::sort(r.begin(), r.end());
  return static_cast<std::uint64_t>(std::unique(r.begin(), r.end()) - r.begin());
}

}  // namespace

Rational lambda_p(std::uint64_t p, std::int64_t n) {
  require_prime(p);
  if (mod_floor(n, p) == 0) return Rational(0);
  return Rational(Int(p), Int(p) - 1);
}

LocalFactor beta_p_reference(const PolyFamily& fam, std::uint64_t p) {
  require_prime(p);
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < p; ++m) {
    std::vector<std::uint64_t> r = residues_at(fam, m, p);
    for (std::uint64_t n = 0; n < p; ++n) {
      bool ok = true;
      for (std::uint64_t rj : r) {
        if ((n + rj) % p == 0) {
          ok = false;
          break;
        }
      }
      if (ok) ++count;
    }
  }
  return {p, LocalFactor::Kind::joint, std::nullopt,
          scaled_count(p, fam.k(), Int(count), 2)};
}

LocalFactor beta_p(const PolyFamily& fam, std::uint64_t p) {
  require_prime(p);
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < p; ++m) {
    std::vector<std::uint64_t> r = residues_at(fam, m, p);
    count += p - distinct_count(r);
  }
  return {p, LocalFactor::Kind::joint, std::nullopt,
          scaled_count(p, fam.k(), Int(count), 2)};
}

LocalFactor beta_p_fixed(const PolyFamily& fam, std::uint64_t p,
                         LocalFactor::Kind kind, std::int64_t value) {
  require_prime(p);
  if (kind == LocalFactor::Kind::fixed_m) {
    std::vector<std::uint64_t> r = residues_at(fam, mod_floor(value, p), p);
    std::uint64_t count = p - distinct_count(r);
    return {p, kind, value, scaled_count(p, fam.k(), Int(count), 1)};
  }
  if (kind != LocalFactor::Kind::fixed_n)
    throw ContractError("beta_p_fixed: kind must be fixed_m or fixed_n");
  std::uint64_t nr = mod_floor(value, p);
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < p; ++m) {
    bool ok = true;
    for (std::size_t j = 0; j < fam.k(); ++j) {
      if ((nr + fam.polys[j].eval_mod(m, p)) % p == 0) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return {p, kind, value, scaled_count(p, fam.k(), Int(count), 1)};
}

SingularSeries singular_series(const PolyFamily& fam, std::uint64_t p_cutoff,
                               int threads) {
  if (p_cutoff < 2) throw ContractError("singular_series: cutoff must be >= 2");
  for (std::size_t i = 0; i + 1 < fam.k(); ++i)
    for (std::size_t j = i + 1; j < fam.k(); ++j)
      if ((fam.polys[i] - fam.polys[j]).is_zero())
        throw ContractError("singular_series: repeated polynomial makes the product diverge");
  std::vector<std::uint64_t> ps = primes_up_to(p_cutoff);
  SingularSeries out;
  out.cutoff = p_cutoff;
  out.per_prime.resize(ps.size());
  parallel_for_index(
      ps.size(), [&](std::size_t i) { out.per_prime[i] = beta_p(fam, ps[i]); },
      threads);

  double prod = 1.0;
  for (const auto& f : out.per_prime) {
    if (f.value == 0 && !out.obstruction_prime) out.obstruction_prime = f.p;
    prod *= to_double(f.value);
    if (f.p >= 11) {
      Rational dev = f.value - 1;
      double t = static_cast<double>(f.p) * static_cast<double>(f.p) *
                 std::abs(to_double(dev));
      out.tail_constant = std::max(out.tail_constant, t);
    }
  }
  out.value = out.obstruction_prime ? 0.0 : prod;
  return out;
}

FixedProduct fixed_parameter_product(const PolyFamily& fam, std::uint64_t cutoff,
                                     LocalFactor::Kind kind, std::int64_t value) {
  FixedProduct out;
  out.cutoff = cutoff;
  if (kind == LocalFactor::Kind::fixed_m) {
    // Termwise divergence: two members take the same integer value at m.
    Int mv(value);
    for (std::size_t i = 0; i + 1 < fam.k(); ++i)
      for (std::size_t j = i + 1; j < fam.k(); ++j)
        if (fam.polys[i].eval(mv) == fam.polys[j].eval(mv)) out.divergent = true;
  } else {
    for (std::size_t i = 0; i + 1 < fam.k(); ++i)
      for (std::size_t j = i + 1; j < fam.k(); ++j)
        if ((fam.polys[i] - fam.polys[j]).is_zero()) out.divergent = true;
  }
  for (std::uint64_t p : primes_up_to(cutoff))
    out.value *= to_double(beta_p_fixed(fam, p, kind, value).value);
  return out;
}

void write_local_factor_csv(std::ostream& out, const std::vector<LocalFactor>& factors) {
  out << "p,numerator,denominator,value\n";
  for (const auto& f : factors) {
    out << f.p << "," << boost::multiprecision::numerator(f.value).str() << ","
        << boost::multiprecision::denominator(f.value).str() << ","
        << to_double(f.value) << "\n";
  }
}

}  // namespace polypat
