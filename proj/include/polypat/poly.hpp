#ifndef POLYPAT_POLY_HPP
#define POLYPAT_POLY_HPP

#include <optional>
#include <string>
#include <vector>

#include "polypat/util.hpp"

namespace polypat {

// Integer polynomial in one variable y, dense coefficients c0 + c1*y + ...
// Canonical form: no trailing zero coefficients; the zero polynomial has an
// empty coefficient vector and degree() == -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Int> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  const Int& leading_coefficient() const;

  Int eval(const Int& m) const;  // Horner, exact
  std::uint64_t eval_mod(std::uint64_t m, std::uint64_t p) const;

  Poly operator-(const Poly& other) const;
  Poly shifted_by(const Int& c) const;  // P + c

  std::string to_string() const;

 private:
  std::vector<Int> coeffs_;
};

struct PolyFamily {
  std::vector<Poly> polys;

  std::size_t k() const { return polys.size(); }
  int max_degree() const;
  const Poly& at(std::size_t j) const;  // 1-based, throws out_of_range
  Int eval(std::size_t j, const Int& m) const { return at(j).eval(m); }

  // Adds the same constant to every member (used to dodge the zero
  // polynomial explicitly, never silently).
  PolyFamily shifted_by(const Int& c) const;
};

// Grammar: family ::= poly (";" poly)*, poly in expanded form over y,
// e.g. "0; y^2; 2*y^2" or "y^3 - 2*y + 1".
Poly parse_poly(const std::string& text);
PolyFamily parse_family(const std::string& text);

std::string family_to_string(const PolyFamily& fam);
std::string family_to_json(const PolyFamily& fam);
PolyFamily family_from_json(const std::string& json_text);

struct HypothesisReport {
  bool pairwise_ok = false;  // deg(P_i - P_j) = d for all i < j
  std::optional<std::size_t> pivot;  // 1-based l with deg(P_l - P_i) = d for i != l
  bool nonconstant_ok = false;
  std::vector<std::uint64_t> obstruction_primes;  // p <= scan bound with beta_p = 0
  std::size_t k = 0;
  int d = 0;
};

HypothesisReport check_hypotheses(const PolyFamily& fam,
                                  std::uint64_t prime_scan_bound);

}  // namespace polypat

#endif
