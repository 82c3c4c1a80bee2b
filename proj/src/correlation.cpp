#include "polypat/correlation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace polypat {

namespace {

double pow_u64_d(std::uint64_t base, int e) {
  double r = 1;
  while (e--) r *= static_cast<double>(base);
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, int e, const char* what) {
  Int v = 1;
  for (int i = 0; i < e; ++i) v *= base;
  if (v > Int(std::uint64_t(1) << 62))
    throw CapacityError(std::string(what) + " overflows the supported range");
  return v.convert_to<std::uint64_t>();
}

// Shift table P_j(m) for m = 1..N; throws if any value leaves int64.
std::vector<std::vector<std::int64_t>> shift_table(const PolyFamily& fam,
                                                   std::uint64_t n_scale) {
  std::vector<std::vector<std::int64_t>> sh(fam.k());
  Int lim = Int(std::int64_t(1) << 62);
  for (std::size_t j = 0; j < fam.k(); ++j) {
    sh[j].resize(n_scale);
    for (std::uint64_t m = 1; m <= n_scale; ++m) {
      Int v = fam.polys[j].eval(Int(m));
      if (v > lim || v < -lim)
        throw CapacityError("polynomial value exceeds the supported range");
      sh[j][m - 1] = v.convert_to<std::int64_t>();
    }
  }
  return sh;
}

double weight_value(const ArithmeticTable& table, Weight w, std::int64_t n) {
  if (n == 0) return 0.0;  // zero argument contributes a zero factor
  switch (w) {
    case Weight::von_mangoldt:
      return table.lambda(n);
    case Weight::moebius:
      return static_cast<double>(table.mu(n));
    case Weight::liouville:
      return static_cast<double>(table.liouville(n));
  }
  return 0.0;
}

void require_table(const ArithmeticTable& table, std::uint64_t needed) {
  if (table.upper_bound() < needed)
    throw std::out_of_range("table of size " + std::to_string(table.upper_bound()) +
                            " too small; need X >= " + std::to_string(needed));
}

std::uint64_t needed_bound(const std::vector<std::vector<std::int64_t>>& sh,
                           std::uint64_t nd) {
  std::int64_t need = 1;
  for (const auto& row : sh) {
    for (std::int64_t v : row) {
      need = std::max(need, std::abs(v + 1));
      need = std::max(need, std::abs(v + static_cast<std::int64_t>(nd)));
    }
  }
  return static_cast<std::uint64_t>(need);
}

}  // namespace

const char* weight_name(Weight w) {
  switch (w) {
    case Weight::von_mangoldt:
      return "lambda";
    case Weight::moebius:
      return "mu";
    case Weight::liouville:
      return "liouville";
  }
  return "?";
}

std::uint64_t required_table_bound(const PolyFamily& fam, std::uint64_t n_scale) {
  int d = fam.max_degree();
  if (d < 0) throw ContractError("family of zero polynomials");
  std::uint64_t nd = checked_pow(n_scale, std::max(d, 0), "N^d");
  return needed_bound(shift_table(fam, n_scale), nd);
}

CorrelationReport double_average(const PolyFamily& fam, std::uint64_t n_scale,
                                 Weight weight, const ArithmeticTable& table,
                                 const CorrelationBudget& budget, int threads) {
  if (n_scale < 3) throw ContractError("double_average requires N >= 3");
  int d = fam.max_degree();
  if (d < 0) throw ContractError("family of zero polynomials");
  std::uint64_t nd = checked_pow(n_scale, d, "N^d");
  if (static_cast<double>(nd) * static_cast<double>(n_scale) >
      static_cast<double>(budget.max_terms))
    throw CapacityError("double average needs " + std::to_string(nd) + " x " +
                        std::to_string(n_scale) + " terms; budget " +
                        std::to_string(budget.max_terms));
  auto sh = shift_table(fam, n_scale);
  require_table(table, needed_bound(sh, nd));

  double total = chunked_sum(
      1, n_scale + 1, 16,
      [&](std::uint64_t mlo, std::uint64_t mhi) {
        KahanSum part;
        for (std::uint64_t m = mlo; m < mhi; ++m) {
          for (std::uint64_t n = 1; n <= nd; ++n) {
            double prod = 1.0;
            for (std::size_t j = 0; j < fam.k(); ++j) {
              prod *= weight_value(table, weight,
                                   static_cast<std::int64_t>(n) + sh[j][m - 1]);
              if (prod == 0.0) break;
            }
            if (prod != 0.0) part.add(prod);
          }
        }
        return part.value();
      },
      threads);

  CorrelationReport rep;
  rep.family = family_to_string(fam);
  rep.n_scale = n_scale;
  rep.weight = weight;
  rep.normalisation = pow_u64_d(n_scale, d + 1);
  rep.empirical = total / rep.normalisation;
  rep.cutoff = budget.singular_cutoff;
  if (weight == Weight::von_mangoldt)
    rep.predicted = singular_series(fam, budget.singular_cutoff, threads).value;
  else
    rep.predicted = 0.0;
  rep.discrepancy = rep.empirical - rep.predicted;
  return rep;
}

CorrelationReport one_dim_average(const PolyFamily& fam, std::uint64_t n_scale,
                                  Weight weight, FixedParameter fixed,
                                  const ArithmeticTable& table,
                                  const CorrelationBudget& budget, int threads) {
  int d = fam.max_degree();
  if (d < 0) throw ContractError("family of zero polynomials");
  std::uint64_t nd = checked_pow(n_scale, d, "N^d");

  CorrelationReport rep;
  rep.family = family_to_string(fam);
  rep.n_scale = n_scale;
  rep.weight = weight;
  rep.cutoff = budget.per_n_cutoff;

  if (fixed.kind == LocalFactor::Kind::fixed_m) {
    std::vector<std::int64_t> sh(fam.k());
    Int mv(fixed.value);
    Int lim = Int(std::int64_t(1) << 62);
    for (std::size_t j = 0; j < fam.k(); ++j) {
      Int v = fam.polys[j].eval(mv);
      if (v > lim || v < -lim) throw CapacityError("polynomial value out of range");
      sh[j] = v.convert_to<std::int64_t>();
    }
    std::int64_t need = 1;
    for (std::int64_t v : sh) {
      need = std::max(need, std::abs(v + 1));
      need = std::max(need, std::abs(v + static_cast<std::int64_t>(nd)));
    }
    require_table(table, static_cast<std::uint64_t>(need));

    double total = chunked_sum(
        1, nd + 1, 1 << 14,
        [&](std::uint64_t lo, std::uint64_t hi) {
          KahanSum part;
          for (std::uint64_t n = lo; n < hi; ++n) {
            double prod = 1.0;
            for (std::size_t j = 0; j < fam.k(); ++j) {
              prod *= weight_value(table, weight, static_cast<std::int64_t>(n) + sh[j]);
              if (prod == 0.0) break;
            }
            if (prod != 0.0) part.add(prod);
          }
          return part.value();
        },
        threads);
    rep.normalisation = pow_u64_d(n_scale, d);
    rep.empirical = total / rep.normalisation;
    if (weight == Weight::von_mangoldt) {
      FixedProduct fp = fixed_parameter_product(fam, budget.per_n_cutoff,
                                                LocalFactor::Kind::fixed_m, fixed.value);
      rep.predicted = fp.value;
      rep.prediction_divergent = fp.divergent;
    }
  } else {
    for (const auto& p : fam.polys)
      if (p.degree() < 1)
        throw ContractError("fixed-n averages require all polynomials nonconstant");
    auto sh = shift_table(fam, n_scale);
    std::int64_t nv = fixed.value;
    std::int64_t need = 1;
    for (const auto& row : sh)
      for (std::int64_t v : row) need = std::max(need, std::abs(v + nv));
    require_table(table, static_cast<std::uint64_t>(need));

    double total = chunked_sum(
        1, n_scale + 1, 1 << 12,
        [&](std::uint64_t lo, std::uint64_t hi) {
          KahanSum part;
          for (std::uint64_t m = lo; m < hi; ++m) {
            double prod = 1.0;
            for (std::size_t j = 0; j < fam.k(); ++j) {
              prod *= weight_value(table, weight, nv + sh[j][m - 1]);
              if (prod == 0.0) break;
            }
            if (prod != 0.0) part.add(prod);
          }
          return part.value();
        },
        threads);
    rep.normalisation = static_cast<double>(n_scale);
    rep.empirical = total / rep.normalisation;
    if (weight == Weight::von_mangoldt) {
      FixedProduct fp = fixed_parameter_product(fam, budget.per_n_cutoff,
                                                LocalFactor::Kind::fixed_n, fixed.value);
      rep.predicted = fp.value;
      rep.prediction_divergent = fp.divergent;
    }
  }
  rep.discrepancy = rep.empirical - rep.predicted;
  return rep;
}

BatemanHornScan bateman_horn_scan(const PolyFamily& fam, std::uint64_t n_scale,
                                  double a_threshold, const ArithmeticTable& table,
                                  const CorrelationBudget& budget, int threads) {
  int d = fam.max_degree();
  if (d < 1) throw ContractError("bateman_horn_scan requires a nonconstant family");
  std::uint64_t nd = checked_pow(n_scale, d, "N^d");
  if (static_cast<double>(nd) * static_cast<double>(n_scale) >
      static_cast<double>(budget.max_terms))
    throw CapacityError("scan needs too many terms");
  auto sh = shift_table(fam, n_scale);
  require_table(table, needed_bound(sh, nd));

  // Per-prime factor tables: beta_p'(n) depends only on n mod p, and the
  // valid-m count is p minus the number of m hitting the class -n.
  std::vector<std::uint64_t> primes = primes_up_to(budget.per_n_cutoff);
  std::vector<std::vector<double>> factor(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    std::uint64_t p = primes[i];
    std::vector<std::uint32_t> kill(p, 0);
    std::vector<std::uint64_t> res(fam.k());
    for (std::uint64_t m = 0; m < p; ++m) {
      for (std::size_t j = 0; j < fam.k(); ++j) res[j] = fam.polys[j].eval_mod(m, p);
      std::sort(res.begin(), res.end());
      for (std::size_t j = 0; j < res.size(); ++j) {
        if (j && res[j] == res[j - 1]) continue;
        kill[(p - res[j]) % p] += 1;
      }
    }
    double scale = std::pow(static_cast<double>(p) / static_cast<double>(p - 1),
                            static_cast<double>(fam.k()));
    factor[i].resize(p);
    for (std::uint64_t r = 0; r < p; ++r)
      factor[i][r] =
          scale * static_cast<double>(p - kill[r]) / static_cast<double>(p);
  }

  BatemanHornScan scan;
  scan.threshold = static_cast<double>(n_scale) /
                   std::pow(std::log(static_cast<double>(n_scale)), a_threshold);
  scan.rows.resize(nd);
  std::atomic<std::uint64_t> exceptional{0};

  parallel_for_index(
      static_cast<std::size_t>(nd),
      [&](std::size_t idx) {
        std::int64_t n = static_cast<std::int64_t>(idx) + 1;
        KahanSum sum;
        for (std::uint64_t m = 1; m <= n_scale; ++m) {
          double prod = 1.0;
          for (std::size_t j = 0; j < fam.k(); ++j) {
            std::int64_t arg = sh[j][m - 1] + n;
            prod *= arg == 0 ? 0.0 : table.lambda(arg);
            if (prod == 0.0) break;
          }
          if (prod != 0.0) sum.add(prod);
        }
        double pred = static_cast<double>(n_scale);
        for (std::size_t i = 0; i < primes.size(); ++i)
          pred *= factor[i][static_cast<std::uint64_t>(n) % primes[i]];
        BatemanHornRow row;
        row.n = n;
        row.empirical_sum = sum.value();
        row.predicted = pred;
        row.deviation = std::abs(sum.value() - pred);
        row.exceptional = row.deviation > scan.threshold;
        if (row.exceptional) exceptional.fetch_add(1);
        scan.rows[idx] = row;
      },
      threads);
  scan.exceptional_count = exceptional.load();
  return scan;
}

ConvergenceStudy convergence_study(const PolyFamily& fam,
                                   const std::vector<std::uint64_t>& n_scales,
                                   Weight weight, const ArithmeticTable& table,
                                   const CorrelationBudget& budget, int threads) {
  ConvergenceStudy study;
  double prev = -1.0;
  for (std::uint64_t n : n_scales) {
    CorrelationReport rep = double_average(fam, n, weight, table, budget, threads);
    ConvergenceRow row{n, rep.empirical, rep.predicted, std::abs(rep.discrepancy)};
    if (prev >= 0.0 && row.abs_discrepancy >= prev) study.non_decreasing_trend = true;
    prev = row.abs_discrepancy;
    study.rows.push_back(row);
  }
  return study;
}

}  // namespace polypat
