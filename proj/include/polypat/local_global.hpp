#ifndef POLYPAT_LOCAL_GLOBAL_HPP
#define POLYPAT_LOCAL_GLOBAL_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polypat/poly.hpp"
#include "polypat/util.hpp"

namespace polypat {

// A system of local weights f(p, n), p-periodic in n, equal to 1 for
// p > support_bound, with |f(p,n) - 1| <= 1_{p | P(n)} + C/p.
struct LocalFunctionSpec {
  std::string name;
  std::function<double(std::uint64_t p, std::int64_t n)> f;
  std::uint64_t support_bound = 0;
  Poly fixed_divisor_poly;  // the P of condition (3)
  double c = 1.0;
};

// Spot-checks periodicity and the closeness condition on a sample;
// throws ContractError on violation.
void contract_check(const LocalFunctionSpec& spec, std::uint64_t sample_points = 200);

struct MeanProductReport {
  double empirical = 0.0;  // E_{n<=N} prod_p f(p,n)
  double factored = 0.0;   // prod_p E_{n in Z/pZ} f(p,n)
  double gap = 0.0;
};

MeanProductReport mean_product(const LocalFunctionSpec& spec, std::uint64_t n,
                               int threads = 0);

// E_{n<=N} prod_j Lambda_{W_j}(Qn + a_j) against its per-prime factorisation,
// with Lambda_1 := 1 (primes above a level contribute nothing for that j).
MeanProductReport correlation_factorization(std::uint64_t q,
                                            const std::vector<std::int64_t>& a,
                                            const std::vector<double>& levels,
                                            std::uint64_t n, int threads = 0);

// Built-in catalog used by the CLI and the acceptance suite.
std::vector<LocalFunctionSpec> local_spec_catalog();

// Rankin-style tail sum_{d|W, d>w^s} C^{omega(d)} (d, P(n)) / d, exact;
// nonincreasing in s by construction.
Rational rankin_tail(double w, unsigned c, const Poly& p, std::int64_t n,
                     double s_exponent);

}  // namespace polypat

#endif
