#ifndef POLYPAT_LOCAL_DENSITY_HPP
#define POLYPAT_LOCAL_DENSITY_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "polypat/poly.hpp"
#include "polypat/util.hpp"

namespace polypat {

struct LocalFactor {
  enum class Kind { joint, fixed_m, fixed_n };

  std::uint64_t p = 0;
  Kind kind = Kind::joint;
  std::optional<std::int64_t> parameter;
  Rational value;  // exact
};

// Local von Mangoldt weight: p/(p-1) off the zero residue, 0 on it.
Rational lambda_p(std::uint64_t p, std::int64_t n);

// beta_p as the full double average over (m, n) in (Z/pZ)^2. O(p^2 k);
// this is the reference oracle for everything downstream.
LocalFactor beta_p_reference(const PolyFamily& fam, std::uint64_t p);

// Same value via root counting per m: the inner count over n is
// p - #distinct{P_j(m) mod p}. O(p k). Must agree with the reference
// exactly; tests enforce that.
LocalFactor beta_p(const PolyFamily& fam, std::uint64_t p);

// beta_p(m) (average over n, m fixed) or beta_p'(n) (average over m).
LocalFactor beta_p_fixed(const PolyFamily& fam, std::uint64_t p,
                         LocalFactor::Kind kind, std::int64_t value);

struct SingularSeries {
  double value = 0.0;
  std::vector<LocalFactor> per_prime;
  // Empirical handle on the beta_p = 1 + O(1/p^2) decay:
  // max over computed p >= 11 of p^2 * |beta_p - 1|.
  double tail_constant = 0.0;
  std::optional<std::uint64_t> obstruction_prime;
  std::uint64_t cutoff = 0;
};

SingularSeries singular_series(const PolyFamily& fam, std::uint64_t p_cutoff,
                               int threads = 0);

// Truncated product of beta_p(m) or beta_p'(n) over p <= cutoff, with a
// termwise-divergence flag (set when two family members collide at the
// fixed parameter, which makes every local factor exceed 1 by ~1/p).
struct FixedProduct {
  double value = 1.0;
  bool divergent = false;
  std::uint64_t cutoff = 0;
};

FixedProduct fixed_parameter_product(const PolyFamily& fam, std::uint64_t cutoff,
                                     LocalFactor::Kind kind, std::int64_t value);

// CSV columns: p, numerator, denominator, value.
void write_local_factor_csv(std::ostream& out, const std::vector<LocalFactor>& factors);

}  // namespace polypat

#endif
