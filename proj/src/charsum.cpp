#include "polypat/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

namespace polypat {

namespace {

// Jacobi symbol (a|n) for odd n >= 1 by quadratic reciprocity.
// The symbol is n-periodic in a, so a is reduced into [0, n) up front.
int jacobi_odd(std::int64_t a, std::uint64_t n) {
  std::uint64_t b = n;
  std::uint64_t ua = mod_floor(a, b);
  int result = 1;
  while (ua != 0) {
    while ((ua & 1) == 0) {
      ua >>= 1;
      std::uint64_t bm8 = b & 7;
      if (bm8 == 3 || bm8 == 5) result = -result;
    }
    std::swap(ua, b);
    if ((ua & 3) == 3 && (b & 3) == 3) result = -result;
    ua %= b;
  }
  return b == 1 ? result : 0;
}

}  // namespace

int kronecker(std::int64_t a, std::int64_t n) {
  if (a == 0 && n == 0) throw ContractError("kronecker symbol undefined at (0,0)");
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;

  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;  // (a|-1) = sign(a)
  }
  // factor out 2 from n: (a|2) = 0 for even a, else (-1)^((a^2-1)/8)
  int twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos) {
    if ((a & 1) == 0) return 0;
    std::int64_t am8 = ((a % 8) + 8) % 8;
    if ((twos & 1) && (am8 == 3 || am8 == 5)) result = -result;
  }
  return result * jacobi_odd(a, static_cast<std::uint64_t>(n));
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 0 || d == 1) return false;
  auto squarefree = [](std::uint64_t m) {
    for (std::uint64_t q = 2; q * q <= m; ++q)
      if (m % (q * q) == 0) return false;
    return true;
  };
  std::int64_t r = ((d % 4) + 4) % 4;
  std::uint64_t ad = static_cast<std::uint64_t>(d < 0 ? -d : d);
  if (r == 1) return squarefree(ad);
  if (r == 0) {
    std::int64_t m = d / 4;
    std::int64_t mr = ((m % 4) + 4) % 4;
    std::uint64_t am = static_cast<std::uint64_t>(m < 0 ? -m : m);
    return (mr == 2 || mr == 3) && squarefree(am);
  }
  return false;
}

int RealCharacter::eval_big(const Int& n) const {
  // chi_d is |d|-periodic, so reducing first keeps the argument small.
  std::uint64_t r = mod_floor_big(n, modulus);
  return kronecker(discriminant, static_cast<std::int64_t>(r));
}

RealCharacter make_real_character(std::int64_t discriminant) {
  if (!is_fundamental_discriminant(discriminant))
    throw ContractError(std::to_string(discriminant) +
                        " is not a fundamental discriminant");
  RealCharacter chi;
  chi.discriminant = discriminant;
  chi.modulus = static_cast<std::uint64_t>(discriminant < 0 ? -discriminant : discriminant);
  chi.parity = kronecker(discriminant, -1);
  return chi;
}

std::vector<std::int8_t> legendre_table(std::uint64_t p) {
  if (p < 3 || !is_prime_u64(p))
    throw ContractError("legendre_table requires an odd prime");
  std::vector<std::int8_t> chi(p, -1);
  chi[0] = 0;
  for (std::uint64_t a = 1; a < p; ++a) chi[(a * a) % p] = 1;
  return chi;
}

std::int64_t complete_sum(const PolyFamily& fam, std::uint64_t p, std::int64_t m,
                          const std::vector<std::size_t>& J) {
  if (p == 2) throw ContractError("complete_sum handles odd primes only");
  if (J.empty()) throw ContractError("complete_sum: empty index set");
  std::vector<std::int8_t> chi = legendre_table(p);
  std::vector<std::uint64_t> shifts;
  shifts.reserve(J.size());
  std::uint64_t mr = mod_floor(m, p);
  for (std::size_t j : J) shifts.push_back(fam.at(j).eval_mod(mr, p));
  std::int64_t sum = 0;
  for (std::uint64_t a = 0; a < p; ++a) {
    int term = 1;
    for (std::uint64_t sh : shifts) {
      term *= chi[(a + sh) % p];
      if (term == 0) break;
    }
    sum += term;
  }
  return sum;
}

WeilAuditReport weil_audit(const PolyFamily& fam, std::uint64_t p_min,
                           std::uint64_t p_max, std::uint64_t trials,
                           std::uint64_t seed) {
  WeilAuditReport rep;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> all(fam.k());
  std::iota(all.begin(), all.end(), 1);

  for (std::uint64_t p : primes_up_to(p_max)) {
    if (p < std::max<std::uint64_t>(p_min, 3)) continue;
    std::vector<std::int8_t> chi = legendre_table(p);
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    for (std::uint64_t t = 0; t < trials; ++t) {
      std::uint64_t m = dist(rng);
      std::vector<std::uint64_t> shifts(fam.k());
      for (std::size_t j = 0; j < fam.k(); ++j)
        shifts[j] = fam.polys[j].eval_mod(m, p);

      // multiplicity pattern of the roots of prod_j (y + P_j(m)) mod p
      std::vector<std::uint64_t> sorted = shifts;
      std::sort(sorted.begin(), sorted.end());
      bool all_even = true;
      std::uint64_t distinct = 0;
      for (std::size_t i = 0; i < sorted.size();) {
        std::size_t run = 1;
        while (i + run < sorted.size() && sorted[i + run] == sorted[i]) ++run;
        if (run & 1) all_even = false;
        ++distinct;
        i += run;
      }
      bool degenerate = distinct < fam.k();

      WeilRow row;
      row.p = p;
      row.m = static_cast<std::int64_t>(m);
      row.distinct_roots = distinct;
      std::int64_t sum = 0;
      for (std::uint64_t a = 0; a < p; ++a) {
        int term = 1;
        for (std::uint64_t sh : shifts) {
          term *= chi[(a + sh) % p];
          if (term == 0) break;
        }
        sum += term;
      }
      row.sum = sum;
      row.normalised = std::abs(static_cast<double>(sum)) / std::sqrt(static_cast<double>(p));
      if (all_even) {
        row.kind = WeilCase::square;
        ++rep.squares;
      } else if (degenerate) {
        row.kind = WeilCase::degenerate_nonsquare;
        ++rep.degenerate;
      } else {
        row.kind = WeilCase::clean;
        rep.max_normalised_clean = std::max(rep.max_normalised_clean, row.normalised);
      }
      if (row.kind != WeilCase::square) {
        double bound = (static_cast<double>(distinct) - 1.0) * std::sqrt(static_cast<double>(p)) +
                       static_cast<double>(distinct);
        row.violation = std::abs(static_cast<double>(sum)) > bound + 1e-9;
        if (row.violation) ++rep.violations;
      }
      ++rep.checked;
      rep.rows.push_back(row);
    }
  }
  return rep;
}

GcdProductScan gcd_product_scan(const Poly& r, std::uint64_t q, std::uint64_t n,
                                double exponent_budget) {
  if (r.is_zero()) throw ContractError("gcd_product_scan: R must be nonzero");
  if (q < 1) throw ContractError("gcd_product_scan: Q must be >= 1");

  GcdProductScan out;
  out.threshold = std::pow(static_cast<double>(q), exponent_budget);

  // prime support of Q by trial division
  std::vector<std::uint64_t> q_primes;
  std::uint64_t qq = q;
  for (std::uint64_t d = 2; d * d <= qq; ++d) {
    if (qq % d == 0) {
      q_primes.push_back(d);
      while (qq % d == 0) qq /= d;
    }
  }
  if (qq > 1) q_primes.push_back(qq);

  for (std::uint64_t m = 1; m <= n; ++m) {
    double rad = 1.0;
    for (std::uint64_t p : q_primes)
      if (r.eval_mod(m, p) == 0) rad *= static_cast<double>(p);
    if (rad > out.threshold) ++out.exceptional_count;
    std::uint64_t rm = mod_floor_big(r.eval(Int(m)), q);
    out.markov_sum += Int(std::gcd(rm == 0 ? q : rm, q));
  }
  return out;
}

void write_weil_csv(std::ostream& out, const WeilAuditReport& report) {
  out << "p,m,sum,distinct_roots,case,normalised,violation\n";
  for (const auto& r : report.rows) {
    const char* kind = r.kind == WeilCase::clean
                           ? "clean"
                           : (r.kind == WeilCase::square ? "square" : "degenerate");
    out << r.p << "," << r.m << "," << r.sum << "," << r.distinct_roots << ","
        << kind << "," << r.normalised << "," << (r.violation ? 1 : 0) << "\n";
  }
}

}  // namespace polypat
