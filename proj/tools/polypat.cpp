// polypat: batch experiments on arithmetic correlations along polynomial
// progressions. Every run emits a deterministic JSON report (and optional
// CSV tables); timestamps only ever go to the separate --meta file so that
// identical configs produce byte-identical reports.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "polypat/arith_table.hpp"
#include "polypat/correlation.hpp"
#include "polypat/charsum.hpp"
#include "polypat/gowers.hpp"
#include "polypat/local_density.hpp"
#include "polypat/local_global.hpp"
#include "polypat/poly.hpp"
#include "polypat/util.hpp"
#include "polypat/vinogradov.hpp"
#include "polypat/wmodel.hpp"

using json = nlohmann::ordered_json;
using namespace polypat;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

struct CommonOpts {
  std::string out;
  std::string meta;
  std::string sieve_cache;
  int threads = 0;
  std::uint64_t seed = 0;
};

json artifact_block() {
  return json{{"name", "polypat"}, {"version", kVersion}, {"schema", kSchemaVersion}};
}

void emit(const CommonOpts& common, json report) {
  std::string text = report.dump(2);
  text.push_back('\n');
  if (common.out.empty() || common.out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(common.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + common.out);
    f << text;
  }
  if (!common.meta.empty()) {
    auto now = std::chrono::system_clock::now().time_since_epoch();
    json meta{{"unix_millis",
               std::chrono::duration_cast<std::chrono::milliseconds>(now).count()},
              {"threads", common.threads > 0 ? common.threads : default_threads()}};
    std::ofstream f(common.meta, std::ios::binary);
    f << meta.dump(2) << "\n";
  }
}

std::string cache_path(const CommonOpts& common) {
  if (common.sieve_cache.empty()) return {};
  const char* dir = std::getenv("POLYPAT_CACHE_DIR");
  if (dir && *dir && common.sieve_cache.front() != '/')
    return std::string(dir) + "/" + common.sieve_cache;
  return common.sieve_cache;
}

ArithmeticTable acquire_table(const CommonOpts& common, std::uint64_t needed,
                              unsigned functions) {
  std::string path = cache_path(common);
  if (!path.empty()) {
    std::ifstream probe(path);
    if (probe.good()) {
      ArithmeticTable t = ArithmeticTable::load(path);
      if (t.upper_bound() >= needed &&
          (t.functions_available() & functions) == functions)
        return t;
    }
  }
  ArithmeticTable t = ArithmeticTable::build(needed, functions);
  if (!path.empty()) t.save(path);
  return t;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoull(item));
  }
  return out;
}

std::vector<std::int64_t> parse_i64_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoll(item));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

Weight parse_weight(const std::string& w) {
  if (w == "lambda") return Weight::von_mangoldt;
  if (w == "mu") return Weight::moebius;
  if (w == "liouville") return Weight::liouville;
  throw ContractError("unknown weight '" + w + "' (expected lambda|mu|liouville)");
}

json correlation_to_json(const CorrelationReport& rep) {
  json out{{"family", rep.family},
           {"N", rep.n_scale},
           {"weight", weight_name(rep.weight)},
           {"empirical", rep.empirical},
           {"predicted", rep.predicted},
           {"discrepancy", rep.discrepancy},
           {"cutoff", rep.cutoff},
           {"normalisation", rep.normalisation}};
  if (rep.prediction_divergent) out["prediction_divergent"] = true;
  if (rep.exceptional_count) out["exceptional_count"] = *rep.exceptional_count;
  return out;
}

Series read_series_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open input csv: " + path);
  std::vector<std::pair<std::int64_t, std::complex<double>>> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1 && line.find_first_not_of("nrealimg, \t") == std::string::npos)
      continue;  // header row
    std::stringstream ss(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ss, tok, ',')) cols.push_back(tok);
    if (cols.size() < 2) throw ParseError("need 'n,re[,im]' per row", lineno);
    std::int64_t n = std::stoll(cols[0]);
    double re = std::stod(cols[1]);
    double im = cols.size() > 2 ? std::stod(cols[2]) : 0.0;
    entries.push_back({n, {re, im}});
  }
  if (entries.empty()) throw ParseError("empty input", 0);
  std::int64_t lo = entries[0].first, hi = entries[0].first;
  for (auto& [n, z] : entries) {
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  Series s;
  s.base = lo;
  s.v.assign(static_cast<std::size_t>(hi - lo + 1), {0.0, 0.0});
  for (auto& [n, z] : entries) s.v[static_cast<std::size_t>(n - lo)] = z;
  return s;
}

// ---- subcommand runners -------------------------------------------------

int run_sieve(const CommonOpts& common, std::uint64_t x, std::uint64_t chebyshev_at) {
  ArithmeticTable t = acquire_table(common, x, kAllArithFns);
  json results{{"X", t.upper_bound()},
               {"functions", "lambda,mu,liouville,Omega,omega,tau"}};
  if (chebyshev_at > 0) {
    double psi = t.chebyshev_sum(std::min(chebyshev_at, t.upper_bound()));
    results["chebyshev_at"] = std::min(chebyshev_at, t.upper_bound());
    results["chebyshev_sum"] = psi;
    results["chebyshev_ratio"] =
        psi / static_cast<double>(std::min(chebyshev_at, t.upper_bound()));
  }
  json config{{"command", "sieve"}, {"X", x}, {"seed", common.seed}};
  emit(common, json{{"artifact", artifact_block()}, {"config", config}, {"results", results}});
  return 0;
}

int run_beta(const CommonOpts& common, const std::string& family, std::uint64_t pmax,
             std::optional<std::int64_t> fixed_m, std::optional<std::int64_t> fixed_n,
             const std::string& csv) {
  PolyFamily fam = parse_family(family);
  json config{{"command", "beta"},
              {"family", family_to_string(fam)},
              {"pmax", pmax},
              {"seed", common.seed}};
  json results;
  std::vector<LocalFactor> factors;
  if (fixed_m || fixed_n) {
    LocalFactor::Kind kind =
        fixed_m ? LocalFactor::Kind::fixed_m : LocalFactor::Kind::fixed_n;
    std::int64_t value = fixed_m ? *fixed_m : *fixed_n;
    config[fixed_m ? "fixed_m" : "fixed_n"] = value;
    double prod = 1.0;
    for (std::uint64_t p : primes_up_to(pmax)) {
      factors.push_back(beta_p_fixed(fam, p, kind, value));
      prod *= to_double(factors.back().value);
    }
    FixedProduct fp = fixed_parameter_product(fam, 2, kind, value);
    results["product"] = prod;
    results["divergent"] = fp.divergent;
  } else {
    SingularSeries s = singular_series(fam, pmax, common.threads);
    factors = s.per_prime;
    results["product"] = s.value;
    results["tail_constant"] = s.tail_constant;
    if (s.obstruction_prime) results["obstruction_prime"] = *s.obstruction_prime;
  }
  json rows = json::array();
  for (const auto& f : factors)
    rows.push_back(json{{"p", f.p},
                        {"numerator", boost::multiprecision::numerator(f.value).str()},
                        {"denominator", boost::multiprecision::denominator(f.value).str()},
                        {"value", to_double(f.value)}});
  results["per_prime"] = rows;
  if (!csv.empty()) {
    std::ofstream f(csv, std::ios::binary);
    write_local_factor_csv(f, factors);
  }
  emit(common, json{{"artifact", artifact_block()}, {"config", config}, {"results", results}});
  return 0;
}

int run_correlate(const CommonOpts& common, const std::string& family, std::uint64_t n,
                  const std::string& weight_text, std::uint64_t cutoff,
                  const std::string& one_dim, std::int64_t fixed_value,
                  const std::string& ns_list, bool bh, double bh_threshold,
                  const std::string& per_n_csv) {
  PolyFamily fam = parse_family(family);
  Weight weight = parse_weight(weight_text);
  CorrelationBudget budget;
  if (cutoff) budget.singular_cutoff = cutoff;
  if (cutoff) budget.per_n_cutoff = std::min<std::uint64_t>(cutoff, 2000);

  std::uint64_t max_scale = n;
  std::vector<std::uint64_t> scales;
  if (!ns_list.empty()) {
    scales = parse_u64_list(ns_list);
    for (std::uint64_t s : scales) max_scale = std::max(max_scale, s);
  }
  ArithmeticTable table =
      acquire_table(common, required_table_bound(fam, max_scale), kAllArithFns);

  json config{{"command", "correlate"},
              {"family", family_to_string(fam)},
              {"N", n},
              {"weight", weight_text},
              {"cutoff", budget.singular_cutoff},
              {"seed", common.seed}};
  json results;

  HypothesisReport hyp = check_hypotheses(fam, std::max<std::uint64_t>(fam.k(), 100));
  results["hypotheses"] =
      json{{"pairwise_ok", hyp.pairwise_ok},
           {"pivot", hyp.pivot ? json(*hyp.pivot) : json(nullptr)},
           {"nonconstant_ok", hyp.nonconstant_ok},
           {"obstruction_primes", hyp.obstruction_primes}};

  if (!ns_list.empty()) {
    config["Ns"] = ns_list;
    auto study = convergence_study(fam, scales, weight, table, budget, common.threads);
    json rows = json::array();
    for (const auto& row : study.rows)
      rows.push_back(json{{"N", row.n_scale},
                          {"empirical", row.empirical},
                          {"predicted", row.predicted},
                          {"abs_discrepancy", row.abs_discrepancy}});
    results["convergence"] = rows;
    results["non_decreasing_trend"] = study.non_decreasing_trend;
  } else if (bh) {
    config["bh_threshold_A"] = bh_threshold;
    auto scan = bateman_horn_scan(fam, n, bh_threshold, table, budget, common.threads);
    results["exceptional_count"] = scan.exceptional_count;
    results["threshold"] = scan.threshold;
    results["rows_computed"] = scan.rows.size();
    if (!per_n_csv.empty()) {
      std::ofstream f(per_n_csv, std::ios::binary);
      f << "n,empirical_sum,predicted,deviation,exceptional\n";
      for (const auto& r : scan.rows)
        f << r.n << "," << r.empirical_sum << "," << r.predicted << "," << r.deviation
          << "," << (r.exceptional ? 1 : 0) << "\n";
    }
  } else if (!one_dim.empty()) {
    FixedParameter fixed;
    fixed.kind = one_dim == "m" ? LocalFactor::Kind::fixed_m : LocalFactor::Kind::fixed_n;
    fixed.value = fixed_value;
    config["one_dim"] = one_dim;
    config["fixed"] = fixed_value;
    auto rep = one_dim_average(fam, n, weight, fixed, table, budget, common.threads);
    results["report"] = correlation_to_json(rep);
  } else {
    auto rep = double_average(fam, n, weight, table, budget, common.threads);
    results["report"] = correlation_to_json(rep);
  }
  emit(common, json{{"artifact", artifact_block()}, {"config", config}, {"results", results}});
  return 0;
}

int run_gowers(const CommonOpts& common, const std::string& input, unsigned s,
               std::vector<std::int64_t> interval, const std::string& method_text) {
  Series f = read_series_csv(input);
  GowersMethod method = GowersMethod::automatic;
  if (method_text == "naive") method = GowersMethod::naive;
  else if (method_text == "recursive") method = GowersMethod::recursive;
  else if (method_text == "fft") method = GowersMethod::fft_u2;
  else if (method_text != "auto")
    throw ContractError("unknown method '" + method_text + "'");

  std::int64_t lo = f.lo(), hi = f.hi() - 1;
  if (interval.size() == 2) {
    lo = interval[0];
    hi = interval[1];
  }
  auto res = interval_norm(f, lo, hi, s, method);
  json config{{"command", "gowers"}, {"input", input},   {"s", s},
              {"interval", {lo, hi}}, {"method", method_text}, {"seed", common.seed}};
  json results{{"unnormalised", res.unnormalised},
               {"normalised", res.normalised},
               {"method_used", res.method == GowersMethod::fft_u2      ? "fft"
                               : res.method == GowersMethod::naive     ? "naive"
                               : res.method == GowersMethod::recursive ? "recursive"
                                                                       : "auto"}};
  emit(common, json{{"artifact", artifact_block()}, {"config", config}, {"results", results}});
  return 0;
}

int run_wmodel(const CommonOpts& common, double w, std::uint64_t n,
               const std::string& check, std::optional<std::int64_t> discriminant,
               double beta_tilde, double s_exp, double c_exp, unsigned gowers_s) {
  SiegelConfig cfg = make_siegel_config(w, discriminant, beta_tilde);
  json config{{"command", "wmodel"}, {"w", w}, {"N", n}, {"check", check},
              {"seed", common.seed}};
  if (discriminant) {
    config["inject_character"] = *discriminant;
    config["beta_tilde"] = beta_tilde;
    config["synthetic_character"] = true;  // no genuine Siegel zero at desk scale
  }
  json results{{"W", cfg.W.str()}, {"level_density", cfg.level_density}};

  if (check == "ap") {
    ArithmeticTable table =
        acquire_table(common, n, static_cast<unsigned>(ArithFn::Lambda));
    auto rep = ap_discrepancy(cfg, n, table);
    json cells = json::array();
    for (const auto& c : rep.cells)
      cells.push_back(json{{"q", c.q}, {"a", c.a}, {"sum", c.sum}});
    results["max_value"] = rep.max_value;
    results["argmax_q"] = rep.argmax_q;
    results["argmax_a"] = rep.argmax_a;
    results["reference_c1"] = rep.reference;
    results["ratio_to_reference"] = rep.max_value / rep.reference;
    results["regime_ok"] = rep.regime_ok;
    results["cells"] = cells;
  } else if (check == "moments") {
    config["s_exp"] = s_exp;
    config["C"] = c_exp;
    auto rep = truncation_moment(cfg, n, s_exp, c_exp);
    results["lhs"] = rep.lhs;
    results["reference"] = rep.reference;
  } else if (check == "gowers") {
    config["gowers_s"] = gowers_s;
    ArithmeticTable table =
        acquire_table(common, n, static_cast<unsigned>(ArithFn::Lambda));
    auto res = gowers_of_error(cfg, n, gowers_s, table);
    results["unnormalised"] = res.unnormalised;
    results["normalised"] = res.normalised;
  } else {
    throw ContractError("unknown check '" + check + "' (expected ap|moments|gowers)");
  }
  emit(common, json{{"artifact", artifact_block()}, {"config", config}, {"results", results}});
  return 0;
}

int run_l2g(const CommonOpts& common, const std::string& spec_name, std::uint64_t n,
            bool corr, std::uint64_t q, const std::string& a_list,
            const std::string& w_list) {
  json config{{"command", "l2g"}, {"N", n}, {"seed", common.seed}};
  json results;
  if (corr) {
    auto a = parse_i64_list(a_list);
    auto w = parse_double_list(w_list);
    config["Q"] = q;
    config["a"] = a_list;
    config["w"] = w_list;
    auto rep = correlation_factorization(q, a, w, n, common.threads);
    results = json{{"empirical", rep.empirical}, {"factored", rep.factored}, {"gap", rep.gap}};
  } else {
    config["spec"] = spec_name;
    bool found = false;
    for (const auto& spec : local_spec_catalog()) {
      if (spec.name != spec_name) continue;
      found = true;
      auto rep = mean_product(spec, n, common.threads);
      results = json{{"empirical", rep.empirical}, {"factored", rep.factored}, {"gap", rep.gap}};
    }
    if (!found)
      throw ContractError("unknown spec '" + spec_name +
                          "' (catalog: lambda_p, indicator-coprime, custom-table)");
  }
  emit(common, json{{"artifact", artifact_block()}, {"config", config}, {"results", results}});
  return 0;
}

int run_weil(const CommonOpts& common, const std::string& family, std::uint64_t pmin,
             std::uint64_t pmax, std::uint64_t trials, const std::string& csv) {
  PolyFamily fam = parse_family(family);
  auto rep = weil_audit(fam, pmin, pmax, trials, common.seed);
  json config{{"command", "weil"},   {"family", family_to_string(fam)},
              {"pmin", pmin},        {"pmax", pmax},
              {"trials", trials},    {"seed", common.seed}};
  json results{{"checked", rep.checked},
               {"violations", rep.violations},
               {"degenerate", rep.degenerate},
               {"squares", rep.squares},
               {"max_normalised_clean", rep.max_normalised_clean}};
  if (!csv.empty()) {
    std::ofstream f(csv, std::ios::binary);
    write_weil_csv(f, rep);
  }
  emit(common, json{{"artifact", artifact_block()}, {"config", config}, {"results", results}});
  return 0;
}

int run_vinogradov(const CommonOpts& common, double alpha, double beta, double eta,
                   std::uint64_t j_opt, std::uint64_t grid) {
  std::size_t truncation = j_opt ? static_cast<std::size_t>(j_opt)
                                 : static_cast<std::size_t>(std::ceil(100.0 / (eta * eta)));
  auto g = build_smoothed_indicator(alpha, beta, eta, truncation);
  auto rep = verify_indicator(g, grid);
  json config{{"command", "vinogradov"}, {"alpha", alpha}, {"beta", beta},
              {"eta", eta},              {"J", truncation}, {"grid", grid},
              {"seed", common.seed}};
  json results{{"constant_term", g.constant_term},
               {"all_ok", rep.all_ok},
               {"plateau_worst_deviation", rep.plateau_worst_deviation},
               {"vanish_worst_deviation", rep.vanish_worst_deviation},
               {"series_allowance", rep.series_allowance},
               {"coefficient_margin", rep.coefficient_margin},
               {"tail_margin", rep.tail_margin},
               {"range", {rep.range_low, rep.range_high}},
               {"periodicity_worst", rep.periodicity_worst},
               {"sandwich_ok", rep.sandwich_ok}};
  emit(common, json{{"artifact", artifact_block()}, {"config", config}, {"results", results}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polypat: correlations of arithmetic functions along polynomial progressions"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  CommonOpts common;
  app.add_option("--out", common.out, "report path (default: stdout)");
  app.add_option("--meta", common.meta, "sidecar metadata file (timestamp, threads)");
  app.add_option("--threads", common.threads, "worker threads (default: hardware)");
  app.add_option("--seed", common.seed, "seed for randomized trials");
  app.add_option("--sieve-cache", common.sieve_cache,
                 "sieve cache file (relative paths join POLYPAT_CACHE_DIR)");

  // sieve
  auto* sieve = app.add_subcommand("sieve", "build/verify arithmetic tables");
  std::uint64_t sieve_x = 1000000, chebyshev_at = 0;
  sieve->add_option("--X", sieve_x, "table upper bound")->required();
  sieve->add_option("--chebyshev", chebyshev_at, "report sum_{n<=X'} Lambda(n)");

  // beta
  auto* beta = app.add_subcommand("beta", "local factors and singular series");
  std::string beta_family;
  std::uint64_t beta_pmax = 100;
  std::string beta_csv;
  std::optional<std::int64_t> beta_fixed_m, beta_fixed_n;
  beta->add_option("--family", beta_family)->required();
  beta->add_option("--pmax", beta_pmax);
  beta->add_option("--fixed-m", beta_fixed_m, "compute beta_p(m) factors");
  beta->add_option("--fixed-n", beta_fixed_n, "compute beta_p'(n) factors");
  beta->add_option("--csv", beta_csv, "per-prime CSV output");

  // correlate
  auto* corr = app.add_subcommand("correlate", "correlation averages vs predictions");
  std::string corr_family, corr_weight = "lambda", corr_one_dim, corr_ns, corr_per_n_csv;
  std::uint64_t corr_n = 100, corr_cutoff = 0;
  std::int64_t corr_fixed = 0;
  bool corr_bh = false;
  double corr_bh_a = 2.0;
  corr->add_option("--family", corr_family)->required();
  corr->add_option("--N", corr_n)->required();
  corr->add_option("--weight", corr_weight, "lambda|mu|liouville");
  corr->add_option("--cutoff", corr_cutoff, "Euler product truncation");
  corr->add_option("--one-dim", corr_one_dim, "m|n: inner average at a fixed parameter");
  corr->add_option("--fixed", corr_fixed, "the fixed m or n value");
  corr->add_option("--Ns", corr_ns, "comma list: convergence study");
  corr->add_flag("--bh", corr_bh, "Bateman-Horn per-n scan");
  corr->add_option("--A", corr_bh_a, "exceptional-set threshold exponent");
  corr->add_option("--per-n-csv", corr_per_n_csv, "per-n CSV for the scan");

  // gowers
  auto* gow = app.add_subcommand("gowers", "Gowers norms of a tabulated function");
  std::string gow_input, gow_method = "auto";
  unsigned gow_s = 2;
  std::vector<std::int64_t> gow_interval;
  gow->add_option("--input", gow_input, "CSV rows n,re[,im]")->required();
  gow->add_option("--s", gow_s);
  gow->add_option("--interval", gow_interval, "a b")->expected(2);
  gow->add_option("--method", gow_method, "naive|recursive|fft|auto");

  // wmodel
  auto* wm = app.add_subcommand("wmodel", "W-trick and Siegel-model audits");
  double wm_w = 10.0, wm_beta_tilde = 1.0, wm_s_exp = 1.0, wm_c = 2.0;
  std::uint64_t wm_n = 100000;
  unsigned wm_gowers_s = 2;
  std::string wm_check = "ap";
  std::optional<std::int64_t> wm_disc;
  wm->add_option("--w", wm_w)->required();
  wm->add_option("--N", wm_n)->required();
  wm->add_option("--check", wm_check, "ap|moments|gowers");
  wm->add_option("--inject-character", wm_disc, "fundamental discriminant (synthetic)");
  wm->add_option("--beta-tilde", wm_beta_tilde, "zero surrogate in (0,1]");
  wm->add_option("--s-exp", wm_s_exp, "moment truncation exponent");
  wm->add_option("--C", wm_c, "moment power");
  wm->add_option("--gowers-s", wm_gowers_s, "s for the error-norm check");

  // l2g
  auto* l2g = app.add_subcommand("l2g", "local-to-global factorisation checks");
  std::string l2g_spec = "lambda_p", l2g_a = "0", l2g_w = "5";
  std::uint64_t l2g_n = 100000, l2g_q = 1;
  bool l2g_corr = false;
  l2g->add_option("--spec", l2g_spec, "catalog spec name");
  l2g->add_option("--N", l2g_n)->required();
  l2g->add_flag("--corr", l2g_corr, "correlation factorisation instead of a spec");
  l2g->add_option("--Q", l2g_q);
  l2g->add_option("--a", l2g_a, "comma list of shifts");
  l2g->add_option("--w", l2g_w, "comma list of levels");

  // weil
  auto* weil = app.add_subcommand("weil", "Weil-bound audit of complete character sums");
  std::string weil_family, weil_csv;
  std::uint64_t weil_pmin = 3, weil_pmax = 500, weil_trials = 50;
  weil->add_option("--family", weil_family)->required();
  weil->add_option("--pmin", weil_pmin);
  weil->add_option("--pmax", weil_pmax);
  weil->add_option("--trials", weil_trials);
  weil->add_option("--csv", weil_csv);

  // vinogradov
  auto* vino = app.add_subcommand("vinogradov", "smoothed indicator construction + checks");
  double v_alpha = -0.25, v_beta = 0.25, v_eta = 0.0625;
  std::uint64_t v_j = 0, v_grid = 4096;
  vino->add_option("--alpha", v_alpha)->required();
  vino->add_option("--beta", v_beta)->required();
  vino->add_option("--eta", v_eta)->required();
  vino->add_option("--J", v_j, "truncation (default ceil(100/eta^2))");
  vino->add_option("--grid", v_grid, "verification grid size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (common.threads > 0) set_default_threads(common.threads);

  try {
    if (sieve->parsed()) return run_sieve(common, sieve_x, chebyshev_at);
    if (beta->parsed())
      return run_beta(common, beta_family, beta_pmax, beta_fixed_m, beta_fixed_n, beta_csv);
    if (corr->parsed())
      return run_correlate(common, corr_family, corr_n, corr_weight, corr_cutoff,
                           corr_one_dim, corr_fixed, corr_ns, corr_bh, corr_bh_a,
                           corr_per_n_csv);
    if (gow->parsed()) return run_gowers(common, gow_input, gow_s, gow_interval, gow_method);
    if (wm->parsed())
      return run_wmodel(common, wm_w, wm_n, wm_check, wm_disc, wm_beta_tilde, wm_s_exp,
                        wm_c, wm_gowers_s);
    if (l2g->parsed()) return run_l2g(common, l2g_spec, l2g_n, l2g_corr, l2g_q, l2g_a, l2g_w);
    if (weil->parsed())
      return run_weil(common, weil_family, weil_pmin, weil_pmax, weil_trials, weil_csv);
    if (vino->parsed()) return run_vinogradov(common, v_alpha, v_beta, v_eta, v_j, v_grid);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const ContractError& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 4;
  } catch (const std::out_of_range& e) {
    std::cerr << "range error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
