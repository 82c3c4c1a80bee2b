#ifndef POLYPAT_CHARSUM_HPP
#define POLYPAT_CHARSUM_HPP

#include <cstdint>
#include <vector>

#include "polypat/poly.hpp"
#include "polypat/util.hpp"

namespace polypat {

// Kronecker symbol (a|n), standard extension of the Jacobi symbol to all
// integers. Errors on (0,0).
int kronecker(std::int64_t a, std::int64_t n);

bool is_fundamental_discriminant(std::int64_t d);

// Real primitive character given by a Kronecker-symbol discriminant.
struct RealCharacter {
  std::int64_t discriminant = 0;
  std::uint64_t modulus = 0;  // conductor |d|
  int parity = 1;             // chi(-1)

  int operator()(std::int64_t n) const { return kronecker(discriminant, n); }
  int eval_big(const Int& n) const;
};

RealCharacter make_real_character(std::int64_t discriminant);

// Legendre symbol table mod an odd prime: table[a] = chi(a), a in [0, p).
std::vector<std::int8_t> legendre_table(std::uint64_t p);

// sum_{a mod p} prod_{j in J} legendre(a + P_j(m) | p), exact integer.
// J holds 1-based indices into the family; p must be an odd prime.
std::int64_t complete_sum(const PolyFamily& fam, std::uint64_t p, std::int64_t m,
                          const std::vector<std::size_t>& J);

enum class WeilCase { clean, degenerate_nonsquare, square };

struct WeilRow {
  std::uint64_t p = 0;
  std::int64_t m = 0;
  std::int64_t sum = 0;
  std::uint64_t distinct_roots = 0;
  WeilCase kind = WeilCase::clean;
  double normalised = 0.0;  // |sum| / sqrt(p)
  bool violation = false;   // |sum| > (r-1) sqrt(p) + r for a non-square product
};

struct WeilAuditReport {
  std::vector<WeilRow> rows;
  std::uint64_t checked = 0;
  std::uint64_t degenerate = 0;
  std::uint64_t squares = 0;
  std::uint64_t violations = 0;
  double max_normalised_clean = 0.0;
};

// Audits |sum_a prod_j chi(a + P_j(m))| <= (r-1) sqrt(p) + r over odd primes
// in [p_min, p_max] with `trials` seeded-random m per prime. Degenerate
// pairs (p | P_i(m) - P_j(m)) are classified, not judged.
WeilAuditReport weil_audit(const PolyFamily& fam, std::uint64_t p_min,
                           std::uint64_t p_max, std::uint64_t trials,
                           std::uint64_t seed);

struct GcdProductScan {
  std::uint64_t exceptional_count = 0;
  Int markov_sum = 0;       // sum_m gcd(R(m), Q), the Markov certificate
  double threshold = 1.0;   // Q^exponent_budget
};

// Counts m <= N whose radical of the (R(m), Q)-support exceeds Q^budget.
GcdProductScan gcd_product_scan(const Poly& r, std::uint64_t q, std::uint64_t n,
                                double exponent_budget);

void write_weil_csv(std::ostream& out, const WeilAuditReport& report);

}  // namespace polypat

#endif
