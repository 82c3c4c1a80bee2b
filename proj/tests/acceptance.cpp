// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit status is nonzero if any hard
// criterion fails. Soft trend checks print WARN without failing, as stated
// per criterion.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polypat/arith_table.hpp"
#include "polypat/charsum.hpp"
#include "polypat/correlation.hpp"
#include "polypat/gowers.hpp"
#include "polypat/local_density.hpp"
#include "polypat/local_global.hpp"
#include "polypat/poly.hpp"
#include "polypat/util.hpp"
#include "polypat/vinogradov.hpp"
#include "polypat/wmodel.hpp"

using namespace polypat;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void report(int number, const char* name, const Outcome& o) {
  std::printf("[%s] %02d %s: %s\n", o.pass ? "PASS" : "FAIL", number, name,
              o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// 1. beta_p by the (m,n) double loop equals E_m beta_p(m) as exact rationals,
//    with the pinned values for {0,y,2y}; runtime < 1 s.
Outcome criterion_local_factors() {
  auto t0 = std::chrono::steady_clock::now();
  for (const char* text : {"0; y", "0; y; 2*y", "0; y^2"}) {
    PolyFamily fam = parse_family(text);
    for (std::uint64_t p : primes_up_to(50)) {
      Rational joint = beta_p_reference(fam, p).value;
      Rational avg = 0;
      for (std::uint64_t m = 0; m < p; ++m)
        avg += beta_p_fixed(fam, p, LocalFactor::Kind::fixed_m,
                            static_cast<std::int64_t>(m))
                   .value;
      avg /= p;
      if (joint != avg)
        return {false, std::string("mismatch at p=") + std::to_string(p) + " for " + text};
      if (beta_p(fam, p).value != joint)
        return {false, std::string("fast path mismatch at p=") + std::to_string(p)};
    }
  }
  PolyFamily triple = parse_family("0; y; 2*y");
  if (beta_p(triple, 3).value != Rational(3, 4)) return {false, "beta_3 != 3/4"};
  if (beta_p(triple, 5).value != Rational(15, 16)) return {false, "beta_5 != 15/16"};
  double dt = seconds_since(t0);
  if (dt >= 1.0) return {false, "runtime " + fmt(dt) + " s >= 1 s"};
  return {true, "3 families, p <= 50, exact; pinned 3/4 and 15/16; " + fmt(dt) + " s"};
}

// 2. naive vs recursive vs FFT-U^2 on 100 random complex vectors, L <= 64,
//    s in {1,2,3}, relative error <= 1e-9; runtime < 10 s.
Outcome criterion_gowers_three_way() {
  auto t0 = std::chrono::steady_clock::now();
  const int n_vectors = 100;
  std::mt19937_64 rng(20240601);
  std::vector<Series> vectors(n_vectors);
  for (auto& f : vectors) {
    std::size_t len = 4 + rng() % 45;  // <= 48 <= 64
    f.base = static_cast<std::int64_t>(rng() % 17) - 8;
    f.v.resize(len);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& z : f.v) z = {dist(rng), dist(rng)};
  }
  std::vector<double> worst(n_vectors, 0.0);
  parallel_for_index(n_vectors, [&](std::size_t i) {
    const Series& f = vectors[i];
    double w = 0.0;
    for (unsigned s : {1u, 2u, 3u}) {
      double a = unnormalised_norm(f, s, GowersMethod::naive);
      double b = unnormalised_norm(f, s, GowersMethod::recursive);
      double m = std::max(std::abs(a), std::abs(b));
      if (m > 0) w = std::max(w, std::abs(a - b) / m);
      if (s == 2) {
        double c = unnormalised_norm(f, s, GowersMethod::fft_u2);
        if (m > 0) w = std::max(w, std::abs(a - c) / m);
      }
    }
    worst[i] = w;
  });
  double w = 0.0;
  for (double x : worst) w = std::max(w, x);
  double dt = seconds_since(t0);
  if (w > 1e-9) return {false, "worst relative error " + fmt(w)};
  if (dt >= 10.0) return {false, "runtime " + fmt(dt) + " s >= 10 s"};
  return {true, "100 vectors, worst rel err " + fmt(w) + ", " + fmt(dt) + " s"};
}

// 3. GCS inequality: 200 random 1-bounded tuples at s=2, L=16.
Outcome criterion_gcs() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  int violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Series> fs(4);
    for (auto& f : fs) {
      f.base = static_cast<std::int64_t>(rng() % 7) - 3;
      f.v.resize(16);
      for (auto& z : f.v) {
        std::complex<double> c(dist(rng), dist(rng));
        if (std::abs(c) > 1.0) c /= std::abs(c);
        z = c;
      }
    }
    if (!gcs_check(fs, 2).ok) ++violations;
  }
  if (violations) return {false, std::to_string(violations) + " violations"};
  return {true, "200 tuples, zero violations beyond 1e-9 slack"};
}

// 4. Modulation invariance of U^s(I) for 50 random (f, alpha), s in {2,3}.
Outcome criterion_modulation() {
  std::mt19937_64 rng(4100);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::uniform_real_distribution<double> adist(0.0, 1.0);
  const double two_pi = 2.0 * std::acos(-1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t len = 16 + rng() % 17;
    Series f;
    f.base = 0;
    f.v.resize(len);
    for (auto& z : f.v) z = {dist(rng), dist(rng)};
    double alpha = adist(rng);
    Series g = f;
    for (std::size_t i = 0; i < len; ++i) {
      double ang = two_pi * alpha * static_cast<double>(i);
      g.v[i] *= std::complex<double>(std::cos(ang), std::sin(ang));
    }
    std::int64_t hi = static_cast<std::int64_t>(len) - 1;
    for (unsigned s : {2u, 3u}) {
      double a = interval_norm(f, 0, hi, s, GowersMethod::recursive).normalised;
      double b = interval_norm(g, 0, hi, s, GowersMethod::recursive).normalised;
      worst = std::max(worst, std::abs(a - b) / std::max(a, b));
    }
  }
  if (worst > 1e-9) return {false, "worst relative error " + fmt(worst)};
  return {true, "50 trials, s in {2,3}, worst rel err " + fmt(worst)};
}

// 5. Lambda_{W,<=V}(n) = Lambda_W(n) for all n <= 10^4, V >= n, w in
//    {3,5,7,13} - exact (identical doubles).
Outcome criterion_moebius_inversion() {
  for (double w : {3.0, 5.0, 7.0, 13.0}) {
    SiegelConfig cfg = make_siegel_config(w);
    for (std::int64_t n = 1; n <= 10000; ++n) {
      double base = lambda_W(cfg, n);
      if (lambda_W_truncated(cfg, n, static_cast<double>(n)) != base)
        return {false, "V=n mismatch at n=" + std::to_string(n) + ", w=" + fmt(w)};
      if (lambda_W_truncated(cfg, n, static_cast<double>(n) + 23.75) != base)
        return {false, "V>n mismatch at n=" + std::to_string(n) + ", w=" + fmt(w)};
    }
  }
  return {true, "exact for n <= 10^4, V in {n, n+23.75}, w in {3,5,7,13}"};
}

// 6. (1/N) sum Lambda_W within 1% of 1 at N=10^6, w=10; E_{n mod p}
//    Lambda_p(n) = 1 exactly for p <= 100.
Outcome criterion_w_mean() {
  SiegelConfig cfg = make_siegel_config(10);
  const std::uint64_t n = 1000000;
  double mean = chunked_sum(1, n + 1, 1 << 14, [&](std::uint64_t lo, std::uint64_t hi) {
                  KahanSum s;
                  for (std::uint64_t m = lo; m < hi; ++m)
                    s.add(lambda_W(cfg, static_cast<std::int64_t>(m)));
                  return s.value();
                }) /
                static_cast<double>(n);
  if (std::abs(mean - 1.0) >= 0.01)
    return {false, "mean " + fmt(mean) + " off by " + fmt(std::abs(mean - 1.0))};
  for (std::uint64_t p : primes_up_to(100)) {
    Rational avg = 0;
    for (std::uint64_t r = 0; r < p; ++r)
      avg += lambda_p(p, static_cast<std::int64_t>(r));
    avg /= p;
    if (avg != Rational(1)) return {false, "E Lambda_p != 1 at p=" + std::to_string(p)};
  }
  return {true, "mean " + fmt(mean) + " at N=10^6, w=10; E Lambda_p = 1 exact, p <= 100"};
}

// 7. Local-to-global gap <= 2% at N=10^5 for the catalog, strictly smaller at
//    4*10^5 (soft per spec: fail only if the trend inverts on every spec).
Outcome criterion_l2g() {
  auto catalog = local_spec_catalog();
  std::string detail;
  int inverted = 0;
  for (const auto& spec : catalog) {
    auto small = mean_product(spec, 100000);
    auto large = mean_product(spec, 400000);
    if (small.gap > 0.02)
      return {false, spec.name + " gap " + fmt(small.gap) + " > 2% at N=10^5"};
    bool shrunk = large.gap < small.gap;
    if (!shrunk) ++inverted;
    detail += spec.name + " " + fmt(small.gap) + "->" + fmt(large.gap) +
              (shrunk ? " " : " (inverted) ");
  }
  if (inverted == static_cast<int>(catalog.size()))
    return {false, "trend inverted on all specs: " + detail};
  return {true, detail + (inverted ? "(soft: tolerated)" : "")};
}

// 8. Headline desk experiment: {0, y^2}, Lambda, N in {50,100,200} -
//    within 15% of prod beta_p at N=200, non-increasing discrepancy
//    N=100 -> N=200 (soft), runtime <= 2 min.
Outcome criterion_headline_lambda() {
  auto t0 = std::chrono::steady_clock::now();
  PolyFamily fam = parse_family("0; y^2");
  ArithmeticTable table =
      ArithmeticTable::build(required_table_bound(fam, 200), kAllArithFns);
  CorrelationBudget budget;
  budget.singular_cutoff = 10000;
  std::vector<double> discrepancies;
  double final_empirical = 0.0, predicted = 0.0;
  for (std::uint64_t n : {50ull, 100ull, 200ull}) {
    auto rep = double_average(fam, n, Weight::von_mangoldt, table, budget);
    discrepancies.push_back(std::abs(rep.discrepancy));
    final_empirical = rep.empirical;
    predicted = rep.predicted;
  }
  double dt = seconds_since(t0);
  if (std::abs(final_empirical - predicted) > 0.15 * predicted)
    return {false, "empirical " + fmt(final_empirical) + " vs predicted " +
                       fmt(predicted) + " beyond 15%"};
  if (dt > 120.0) return {false, "runtime " + fmt(dt) + " s > 2 min"};
  std::string detail = "empirical " + fmt(final_empirical) + " vs " + fmt(predicted) +
                       " (cutoff 10^4), |disc| 50/100/200 = " + fmt(discrepancies[0]) +
                       "/" + fmt(discrepancies[1]) + "/" + fmt(discrepancies[2]) + ", " +
                       fmt(dt) + " s";
  if (discrepancies[2] > discrepancies[1]) detail += " [WARN soft trend inverted]";
  return {true, detail};
}

// 9. Moebius-weight desk experiment: {0, y^2}, mu, N=200: |empirical| <= 0.05
//    report tolerance, 0.15 hard cap.
Outcome criterion_headline_mu() {
  PolyFamily fam = parse_family("0; y^2");
  ArithmeticTable table =
      ArithmeticTable::build(required_table_bound(fam, 200), kAllArithFns);
  auto rep = double_average(fam, 200, Weight::moebius, table);
  double e = std::abs(rep.empirical);
  if (e > 0.15) return {false, "|empirical| " + fmt(e) + " above hard cap 0.15"};
  std::string detail = "|empirical| = " + fmt(e);
  if (e > 0.05) detail += " [WARN above 0.05 report tolerance]";
  return {true, detail};
}

// 10. Weil audit: odd p <= 500, 50 random m per prime, three families, zero
//     violations; pinned sum chi(a)chi(a+1) = -1 at p=5.
Outcome criterion_weil() {
  if (complete_sum(parse_family("0; y"), 5, 1, {1, 2}) != -1)
    return {false, "pinned value sum_a chi(a)chi(a+1) != -1 at p=5"};
  std::uint64_t checked = 0;
  for (const char* text : {"0; y", "0; y; 2*y", "0; y^2"}) {
    auto rep = weil_audit(parse_family(text), 3, 500, 50, 20240601);
    if (rep.violations)
      return {false, std::string(text) + ": " + std::to_string(rep.violations) +
                         " violations"};
    checked += rep.checked;
  }
  return {true, std::to_string(checked) + " sums checked, zero violations; pinned -1 ok"};
}

// 11. Vinogradov lemma: 20 admissible triples, all three guarantees with
//     positive margin at J = ceil(100/eta^2).
Outcome criterion_vinogradov() {
  std::vector<std::array<double, 3>> triples = {
      {-0.25, 0.25, 0.0625}, {-0.2, 0.3, 0.05},    {-0.45, -0.05, 0.04},
      {0.05, 0.45, 0.04},    {-0.1, 0.1, 0.05},    {-0.3, 0.1, 0.06},
      {-0.4, 0.4, 0.045},    {-0.35, 0.15, 0.055}, {0.1, 0.3, 0.06},
      {-0.3, -0.1, 0.06},    {-0.15, 0.35, 0.045}, {-0.05, 0.05, 0.035},
      {-0.02, 0.02, 0.008},  {-0.01, 0.03, 0.009}, {0.2, 0.4, 0.05},
      {-0.4, -0.2, 0.05},    {-0.12, 0.18, 0.07},  {-0.22, 0.08, 0.08},
      {-0.18, 0.22, 0.1},    {-0.33, 0.27, 0.04}};
  double worst_margin = 1e300;
  for (const auto& [alpha, beta, eta] : triples) {
    std::size_t j = static_cast<std::size_t>(std::ceil(100.0 / (eta * eta)));
    SmoothedIndicator g = build_smoothed_indicator(alpha, beta, eta, j);
    VinogradovReport rep = verify_indicator(g, 2048);
    if (!rep.all_ok)
      return {false, "guarantees fail at (" + fmt(alpha) + "," + fmt(beta) + "," +
                         fmt(eta) + ")"};
    worst_margin = std::min({worst_margin, rep.coefficient_margin, rep.tail_margin});
  }
  return {true, "20 triples ok; worst coefficient/tail margin " + fmt(worst_margin)};
}

// 12. AP discrepancy: N=10^5, w=10, no character: max <= 0.05 N.
Outcome criterion_ap() {
  const std::uint64_t n = 100000;
  ArithmeticTable table =
      ArithmeticTable::build(n, static_cast<unsigned>(ArithFn::Lambda));
  SiegelConfig cfg = make_siegel_config(10);
  auto rep = ap_discrepancy(cfg, n, table);
  if (rep.max_value > 0.05 * static_cast<double>(n))
    return {false, "max " + fmt(rep.max_value) + " > 0.05 N"};
  return {true, "max " + fmt(rep.max_value) + " at (q,a)=(" +
                    std::to_string(rep.argmax_q) + "," + std::to_string(rep.argmax_a) +
                    "), bound " + fmt(0.05 * static_cast<double>(n))};
}

// 13. CLI determinism: byte-identical reports across --threads 1, 4, 8.
Outcome criterion_determinism() {
  const char* bin = std::getenv("POLYPAT_BIN");
  std::string binary = bin && *bin ? bin : "./polypat";
  {
    std::ifstream probe(binary);
    if (!probe.good()) return {false, "CLI binary not found at " + binary};
  }
  struct Run {
    const char* label;
    std::string args;
  };
  std::vector<Run> runs = {
      {"correlate", "correlate --family \"0; y^2\" --N 50 --weight lambda --cutoff 500"},
      {"weil", "weil --family \"0; y; 2*y\" --pmax 100 --trials 20 --seed 7"},
      {"beta", "beta --family \"0; y; 2*y\" --pmax 300"},
  };
  for (const auto& run : runs) {
    std::vector<std::string> outputs;
    for (int threads : {1, 4, 8}) {
      std::string path = "/tmp/polypat_det_" + std::string(run.label) + "_" +
                         std::to_string(threads) + ".json";
      std::string cmd = binary + " " + run.args + " --threads " +
                        std::to_string(threads) + " --out " + path;
      if (std::system(cmd.c_str()) != 0) return {false, std::string("run failed: ") + cmd};
      std::ifstream f(path, std::ios::binary);
      std::stringstream ss;
      ss << f.rdbuf();
      outputs.push_back(ss.str());
      std::remove(path.c_str());
    }
    if (outputs[0].empty()) return {false, std::string(run.label) + ": empty report"};
    if (outputs[0] != outputs[1] || outputs[1] != outputs[2])
      return {false, std::string(run.label) + ": reports differ across thread counts"};
  }
  return {true, "3 commands x threads {1,4,8}: byte-identical reports"};
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  std::printf("polypat acceptance suite\n");
  report(1, "local-factor oracle equivalence", criterion_local_factors());
  report(2, "gowers three-way agreement", criterion_gowers_three_way());
  report(3, "gowers-cauchy-schwarz inequality", criterion_gcs());
  report(4, "modulation invariance", criterion_modulation());
  report(5, "moebius-inversion truncation identity", criterion_moebius_inversion());
  report(6, "w-model mean value", criterion_w_mean());
  report(7, "local-to-global gap", criterion_l2g());
  report(8, "singular-series desk-scale experiment", criterion_headline_lambda());
  report(9, "moebius cancellation desk-scale experiment", criterion_headline_mu());
  report(10, "weil audit", criterion_weil());
  report(11, "vinogradov lemma verification", criterion_vinogradov());
  report(12, "ap discrepancy audit", criterion_ap());
  report(13, "cli determinism", criterion_determinism());
  std::printf("%d/13 criteria passed in %.1f s\n", 13 - g_failures, seconds_since(t0));
  return g_failures ? 1 : 0;
}
