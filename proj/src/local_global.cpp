#include "polypat/local_global.hpp"

#include <cmath>

#include "polypat/wmodel.hpp"

namespace polypat {

void contract_check(const LocalFunctionSpec& spec, std::uint64_t sample_points) {
  std::vector<std::uint64_t> ps = primes_up_to(spec.support_bound);
  for (std::uint64_t p : ps) {
    for (std::uint64_t i = 1; i <= sample_points; ++i) {
      // dense small values plus a spread of larger ones
      std::int64_t n = i <= sample_points / 2
                           ? static_cast<std::int64_t>(i)
                           : static_cast<std::int64_t>((i * i * 37 + i) % 100000) + 1;
      double a = spec.f(p, n);
      double b = spec.f(p, n + static_cast<std::int64_t>(p));
      if (a != b)
        throw ContractError(spec.name + ": f(" + std::to_string(p) +
                            ", n) is not p-periodic at n=" + std::to_string(n));
      double slack = 1e-12;
      bool divides = spec.fixed_divisor_poly.is_zero()
                         ? false
                         : spec.fixed_divisor_poly.eval_mod(mod_floor(n, p), p) == 0;
      double allowed = (divides ? 1.0 : 0.0) + spec.c / static_cast<double>(p) + slack;
      if (std::abs(a - 1.0) > allowed)
        throw ContractError(spec.name + ": |f(p,n)-1| exceeds 1_{p|P(n)} + C/p at p=" +
                            std::to_string(p) + ", n=" + std::to_string(n));
    }
  }
}

MeanProductReport mean_product(const LocalFunctionSpec& spec, std::uint64_t n,
                               int threads) {
  contract_check(spec);
  std::vector<std::uint64_t> ps = primes_up_to(spec.support_bound);

  double total = chunked_sum(
      1, n + 1, 1 << 14,
      [&](std::uint64_t lo, std::uint64_t hi) {
        KahanSum part;
        for (std::uint64_t m = lo; m < hi; ++m) {
          double prod = 1.0;
          for (std::uint64_t p : ps) {
            prod *= spec.f(p, static_cast<std::int64_t>(m));
            if (prod == 0.0) break;
          }
          part.add(prod);
        }
        return part.value();
      },
      threads);

  MeanProductReport rep;
  rep.empirical = total / static_cast<double>(n);
  rep.factored = 1.0;
  for (std::uint64_t p : ps) {
    KahanSum s;
    for (std::uint64_t r = 1; r <= p; ++r) s.add(spec.f(p, static_cast<std::int64_t>(r)));
    rep.factored *= s.value() / static_cast<double>(p);
  }
  rep.gap = std::abs(rep.empirical - rep.factored);
  return rep;
}

MeanProductReport correlation_factorization(std::uint64_t q,
                                            const std::vector<std::int64_t>& a,
                                            const std::vector<double>& levels,
                                            std::uint64_t n, int threads) {
  if (q < 1) throw ContractError("correlation_factorization: Q must be >= 1");
  if (a.size() != levels.size() || a.empty())
    throw ContractError("correlation_factorization: shifts and levels must pair up");
  double wmax = 0.0;
  for (double w : levels) {
    if (w < 2.0) throw ContractError("levels must be >= 2");
    if (w > 43.0) throw ContractError("levels above 43 exceed the enumeration cap");
    wmax = std::max(wmax, w);
  }

  std::vector<SiegelConfig> cfgs;
  cfgs.reserve(levels.size());
  for (double w : levels) cfgs.push_back(make_siegel_config(w));

  double total = chunked_sum(
      1, n + 1, 1 << 14,
      [&](std::uint64_t lo, std::uint64_t hi) {
        KahanSum part;
        for (std::uint64_t m = lo; m < hi; ++m) {
          double prod = 1.0;
          for (std::size_t j = 0; j < a.size(); ++j) {
            std::int64_t arg = static_cast<std::int64_t>(q * m) + a[j];
            double v = arg == 0 ? 0.0 : lambda_W(cfgs[j], arg);
            prod *= v;
            if (prod == 0.0) break;
          }
          part.add(prod);
        }
        return part.value();
      },
      threads);

  MeanProductReport rep;
  rep.empirical = total / static_cast<double>(n);
  rep.factored = 1.0;
  for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(std::floor(wmax)))) {
    // E_{r in Z/pZ} prod_{j: p <= w_j} Lambda_p(Qr + a_j), exact per prime
    std::uint64_t count = 0;
    unsigned k_here = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (static_cast<double>(p) <= levels[j]) ++k_here;
    for (std::uint64_t r = 0; r < p; ++r) {
      bool ok = true;
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (static_cast<double>(p) > levels[j]) continue;  // Lambda_1 := 1
        std::uint64_t residue = (q % p * r + mod_floor(a[j], p)) % p;
        if (residue == 0) {
          ok = false;
          break;
        }
      }
      if (ok) ++count;
    }
    Rational factor = Rational(Int(count), Int(p));
    for (unsigned i = 0; i < k_here; ++i) factor *= Rational(Int(p), Int(p) - 1);
    rep.factored *= to_double(factor);
  }
  rep.gap = std::abs(rep.empirical - rep.factored);
  return rep;
}

std::vector<LocalFunctionSpec> local_spec_catalog() {
  std::vector<LocalFunctionSpec> out;

  {
    LocalFunctionSpec s;
    s.name = "lambda_p";
    s.support_bound = 5;
    s.fixed_divisor_poly = parse_poly("y");
    s.c = 2.0;  // |Lambda_2(n) - 1| = 1 = C/2 off the even residue
    s.f = [](std::uint64_t p, std::int64_t n) {
      if (p > 5) return 1.0;
      return mod_floor(n, p) == 0 ? 0.0
                                  : static_cast<double>(p) / static_cast<double>(p - 1);
    };
    out.push_back(std::move(s));
  }
  {
    LocalFunctionSpec s;
    s.name = "indicator-coprime";
    s.support_bound = 7;
    s.fixed_divisor_poly = parse_poly("y");
    s.c = 0.0;
    s.f = [](std::uint64_t p, std::int64_t n) {
      if (p > 7) return 1.0;
      return mod_floor(n, p) == 0 ? 0.0 : 1.0;
    };
    out.push_back(std::move(s));
  }
  {
    // 1 + 1_{p | n(n+2)} - 1/p on p <= 5: mean 1 at p=2, 1 + 1/p above.
    LocalFunctionSpec s;
    s.name = "custom-table";
    s.support_bound = 5;
    s.fixed_divisor_poly = parse_poly("y^2 + 2*y");
    s.c = 1.0;
    s.f = [](std::uint64_t p, std::int64_t n) {
      if (p > 5) return 1.0;
      bool hit = mod_floor(n, p) == 0 || mod_floor(n + 2, p) == 0;
      return 1.0 + (hit ? 1.0 : 0.0) - 1.0 / static_cast<double>(p);
    };
    out.push_back(std::move(s));
  }
  return out;
}

Rational rankin_tail(double w, unsigned c, const Poly& p, std::int64_t n,
                     double s_exponent) {
  std::vector<std::uint64_t> primes = primes_up_to(static_cast<std::uint64_t>(std::floor(w)));
  if (primes.size() > 20)
    throw CapacityError("rankin_tail: full divisor enumeration needs <= 20 primes");
  Int pn = p.eval(Int(n));
  long double threshold = std::pow(static_cast<long double>(w),
                                   static_cast<long double>(s_exponent));
  Rational total = 0;
  std::uint64_t subsets = std::uint64_t(1) << primes.size();
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    std::uint64_t d = 1;
    unsigned omega = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (mask & (std::uint64_t(1) << i)) {
        d *= primes[i];
        ++omega;
      }
    }
    if (static_cast<long double>(d) <= threshold) continue;
    Int g = boost::multiprecision::gcd(pn < 0 ? Int(-pn) : pn, Int(d));
    Int weight = 1;
    for (unsigned i = 0; i < omega; ++i) weight *= c;
    total += Rational(weight * g, Int(d));
  }
  return total;
}

}  // namespace polypat
