#ifndef POLYPAT_GVN_HPP
#define POLYPAT_GVN_HPP

#include <string>
#include <vector>

#include "polypat/gowers.hpp"
#include "polypat/poly.hpp"

namespace polypat {

// Exploratory comparator: evaluates the weighted polynomial average on the
// left and the Gowers norm of the last weight on the right. The exponents in
// the underlying inequality are existential, so nothing here passes or fails;
// both sides are reported for inspection.
struct GvnReport {
  std::string family;
  std::uint64_t n_scale = 0;
  double lhs = 0.0;           // |N^{-(d+1)} sum theta(m) f_0(n) prod f_j(n+P_j(m))|
  double gowers_value = 0.0;  // ||f_k||_{U^s[-C N^d, C N^d]}
  unsigned s = 0;
  unsigned k_display = 1;  // echoed exponent used when eyeballing lhs vs rhs^{1/K}
  std::int64_t support_c = 1;
};

GvnReport gvn_evaluate(const PolyFamily& fam, std::uint64_t n_scale,
                       const Series& theta, const std::vector<Series>& fs,
                       unsigned s, unsigned k_display = 1,
                       const GowersBudget& budget = {});

// Convenience constructors for experiment inputs.
Series series_ones(std::int64_t lo, std::int64_t hi_inclusive);
Series series_random_pm1(std::int64_t lo, std::int64_t hi_inclusive, std::uint64_t seed);
Series series_modulated(const Series& f, double alpha);

}  // namespace polypat

#endif
