#ifndef POLYPAT_CORRELATION_HPP
#define POLYPAT_CORRELATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polypat/arith_table.hpp"
#include "polypat/local_density.hpp"
#include "polypat/poly.hpp"

namespace polypat {

enum class Weight { von_mangoldt, moebius, liouville };

const char* weight_name(Weight w);

struct CorrelationReport {
  std::string family;
  std::uint64_t n_scale = 0;  // N
  Weight weight = Weight::von_mangoldt;
  double empirical = 0.0;
  double predicted = 0.0;
  double discrepancy = 0.0;
  std::uint64_t cutoff = 0;          // Euler-product truncation used
  double normalisation = 1.0;        // N^{d+1}, N^d or N
  bool prediction_divergent = false; // truncated product of a divergent series
  std::optional<std::uint64_t> exceptional_count;
};

struct CorrelationBudget {
  std::uint64_t max_terms = std::uint64_t(1) << 33;
  std::uint64_t singular_cutoff = 10000;  // prediction truncation, Thm-1.1 style
  std::uint64_t per_n_cutoff = 1000;      // per-parameter product truncation
};

// Required sieve size for the double average at scale N.
std::uint64_t required_table_bound(const PolyFamily& fam, std::uint64_t n_scale);

// (1/N^{d+1}) sum_{n <= N^d} sum_{m <= N} prod_j w(n + P_j(m)); terms with a
// zero argument contribute 0.
CorrelationReport double_average(const PolyFamily& fam, std::uint64_t n_scale,
                                 Weight weight, const ArithmeticTable& table,
                                 const CorrelationBudget& budget = {},
                                 int threads = 0);

struct FixedParameter {
  LocalFactor::Kind kind = LocalFactor::Kind::fixed_m;
  std::int64_t value = 0;
};

// Inner one-dimensional average at a fixed m (average over n <= N^d) or a
// fixed n (average over m <= N), with the matching local-product prediction.
CorrelationReport one_dim_average(const PolyFamily& fam, std::uint64_t n_scale,
                                  Weight weight, FixedParameter fixed,
                                  const ArithmeticTable& table,
                                  const CorrelationBudget& budget = {},
                                  int threads = 0);

struct BatemanHornRow {
  std::int64_t n = 0;
  double empirical_sum = 0.0;  // sum_{m<=N} prod_j Lambda(P_j(m)+n)
  double predicted = 0.0;      // N * prod_{p<=cutoff} beta_p'(n)
  double deviation = 0.0;
  bool exceptional = false;
};

struct BatemanHornScan {
  std::vector<BatemanHornRow> rows;
  std::uint64_t exceptional_count = 0;
  double threshold = 0.0;  // N / (log N)^A
};

BatemanHornScan bateman_horn_scan(const PolyFamily& fam, std::uint64_t n_scale,
                                  double a_threshold, const ArithmeticTable& table,
                                  const CorrelationBudget& budget = {},
                                  int threads = 0);

struct ConvergenceRow {
  std::uint64_t n_scale = 0;
  double empirical = 0.0;
  double predicted = 0.0;
  double abs_discrepancy = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  bool non_decreasing_trend = false;  // soft warning, not a failure
};

ConvergenceStudy convergence_study(const PolyFamily& fam,
                                   const std::vector<std::uint64_t>& n_scales,
                                   Weight weight, const ArithmeticTable& table,
                                   const CorrelationBudget& budget = {},
                                   int threads = 0);

}  // namespace polypat

#endif
