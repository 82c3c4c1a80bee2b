#include "polypat/local_density.hpp"
#include "polypat/poly.hpp"

namespace polypat {

HypothesisReport check_hypotheses(const PolyFamily& fam,
                                  std::uint64_t prime_scan_bound) {
  if (fam.polys.empty()) throw ContractError("empty family");
  if (prime_scan_bound < 2) throw ContractError("prime scan bound must be >= 2");

  HypothesisReport rep;
  rep.k = fam.k();
  rep.d = fam.max_degree();

  rep.pairwise_ok = true;
  for (std::size_t i = 0; i + 1 < fam.k(); ++i)
    for (std::size_t j = i + 1; j < fam.k(); ++j)
      if ((fam.polys[i] - fam.polys[j]).degree() != rep.d) rep.pairwise_ok = false;

  for (std::size_t l = 0; l < fam.k() && !rep.pivot; ++l) {
    bool ok = true;
    for (std::size_t i = 0; i < fam.k(); ++i) {
      if (i == l) continue;
      if ((fam.polys[l] - fam.polys[i]).degree() != rep.d) {
        ok = false;
        break;
      }
    }
    if (ok) rep.pivot = l + 1;
  }

  rep.nonconstant_ok = true;
  for (const auto& p : fam.polys)
    if (p.degree() < 1) rep.nonconstant_ok = false;

  for (std::uint64_t p : primes_up_to(prime_scan_bound))
    if (beta_p(fam, p).value == 0) rep.obstruction_primes.push_back(p);

  return rep;
}

}  // namespace polypat
