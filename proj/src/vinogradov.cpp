#include "polypat/vinogradov.hpp"

#include <algorithm>
#include <cmath>

#include "polypat/fft.hpp"

namespace polypat {

namespace {

const double kPi = std::acos(-1.0);

double dist_to_nearest_int(double x) {
  double r = x - std::round(x);
  return std::abs(r);
}

// reduce to the fundamental domain [-1/2, 1/2)
double reduce(double x) {
  double r = x - std::round(x);
  if (r >= 0.5) r -= 1.0;
  return r;
}

}  // namespace

double SmoothedIndicator::eval_exact(double x) const {
  double a = alpha + eta / 2.0, b = beta - eta / 2.0;
  double t = reduce(x);
  // overlap of [t - eta/2, t + eta/2] with [a, b], divided by eta
  double overlap = std::min(t + eta / 2.0, b) - std::max(t - eta / 2.0, a);
  return std::clamp(overlap / eta, 0.0, 1.0);
}

std::complex<double> SmoothedIndicator::coefficient(std::int64_t j) const {
  if (j == 0) return {constant_term, 0.0};
  std::size_t a = static_cast<std::size_t>(j < 0 ? -j : j);
  if (a > coeffs.size()) return {0.0, 0.0};
  std::complex<double> c = coeffs[a - 1];
  return j < 0 ? std::conj(c) : c;
}

double SmoothedIndicator::eval_series(double x) const {
  double acc = constant_term;
  for (std::size_t j = 1; j <= coeffs.size(); ++j) {
    double ang = 2.0 * kPi * static_cast<double>(j) * x;
    std::complex<double> e(std::cos(ang), std::sin(ang));
    acc += 2.0 * (coeffs[j - 1] * e).real();
  }
  return acc;
}

double SmoothedIndicator::tail_bound(double k) const {
  return 2.0 / (kPi * kPi * eta * std::max(k, 1.0));
}

SmoothedIndicator build_smoothed_indicator(double alpha, double beta, double eta,
                                           std::size_t truncation) {
  if (!(alpha > -0.5 && alpha < beta && beta < 0.5))
    throw ContractError("need -1/2 < alpha < beta < 1/2");
  double window = std::min({0.5 - dist_to_nearest_int(alpha),
                            0.5 - dist_to_nearest_int(beta),
                            dist_to_nearest_int(alpha - beta) / 2.0});
  if (!(eta > 0.0 && eta < window))
    throw ContractError("eta outside the admissible window (0, " +
                        std::to_string(window) + ")");
  if (truncation == 0 || truncation > (std::size_t(1) << 26))
    throw CapacityError("truncation J out of range");

  SmoothedIndicator g;
  g.alpha = alpha;
  g.beta = beta;
  g.eta = eta;
  g.truncation = truncation;
  g.constant_term = beta - alpha - eta;

  // c_j = e(-j (a+b)/2) sin(pi j (b-a)) / (pi j) * sin(pi j eta) / (pi j eta)
  double a = alpha + eta / 2.0, b = beta - eta / 2.0;
  double mid = (a + b) / 2.0, width = b - a;
  g.coeffs.resize(truncation);
  for (std::size_t j = 1; j <= truncation; ++j) {
    double dj = static_cast<double>(j);
    double box = std::sin(kPi * dj * width) / (kPi * dj);
    double kernel = std::sin(kPi * dj * eta) / (kPi * dj * eta);
    double ang = -2.0 * kPi * dj * mid;
    g.coeffs[j - 1] = std::complex<double>(std::cos(ang), std::sin(ang)) * box * kernel;
  }
  return g;
}

namespace {

// Truncated series on the uniform grid x_i = -1/2 + i/G. Because
// e(j x_i) = (-1)^j e(j i / G) depends on j only through j mod G, the
// coefficients fold into G residue classes first; evaluation is then
// O(J + G^2) instead of O(J G).
std::vector<double> series_on_grid(const SmoothedIndicator& g, std::size_t grid) {
  std::vector<std::complex<double>> folded(grid, {0.0, 0.0});
  folded[0] += g.constant_term;
  for (std::size_t j = 1; j <= g.truncation; ++j) {
    double sign = (j & 1) ? -1.0 : 1.0;
    std::complex<double> c = g.coeffs[j - 1] * sign;
    folded[j % grid] += c;
    folded[(grid - j % grid) % grid] += std::conj(c);
  }
  std::vector<double> out(grid);
  if ((grid & (grid - 1)) == 0) {
    fft_pow2(folded, true);  // X_i = sum_r folded[r] e(r i / G) = G * IDFT
    for (std::size_t i = 0; i < grid; ++i)
      out[i] = folded[i].real() * static_cast<double>(grid);
    return out;
  }
  if (grid > (std::size_t(1) << 13))
    throw CapacityError("grid sizes above 8192 must be powers of two");
  for (std::size_t i = 0; i < grid; ++i) {
    double ang = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(grid);
    std::complex<double> e1(std::cos(ang), std::sin(ang));
    std::complex<double> rot(1.0, 0.0);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t r = 0; r < grid; ++r) {
      acc += folded[r] * rot;
      rot *= e1;
    }
    out[i] = acc.real();
  }
  return out;
}

}  // namespace

VinogradovReport verify_indicator(const SmoothedIndicator& g, std::size_t grid_size) {
  if (grid_size < 1000) throw ContractError("grid_size must be >= 1000");
  VinogradovReport rep;
  rep.series_allowance = g.tail_bound(static_cast<double>(g.truncation));

  std::vector<double> series = series_on_grid(g, grid_size);
  rep.range_low = 1.0;
  rep.range_high = 0.0;
  rep.sandwich_ok = true;
  for (std::size_t i = 0; i < grid_size; ++i) {
    double x = -0.5 + static_cast<double>(i) / static_cast<double>(grid_size);
    double exact = g.eval_exact(x);
    rep.range_low = std::min(rep.range_low, exact);
    rep.range_high = std::max(rep.range_high, exact);
    rep.periodicity_worst =
        std::max(rep.periodicity_worst, std::abs(exact - g.eval_exact(x + 1.0)));

    const double tol = 1e-12;
    bool inner = x >= g.alpha + g.eta + tol && x <= g.beta - g.eta - tol;
    bool outer = x < g.alpha - g.eta - tol || x > g.beta + g.eta + tol;
    if (inner && exact < 1.0 - tol) rep.sandwich_ok = false;
    if (outer && exact > tol) rep.sandwich_ok = false;

    if (inner)
      rep.plateau_worst_deviation =
          std::max(rep.plateau_worst_deviation, std::abs(series[i] - 1.0));
    if (outer)
      rep.vanish_worst_deviation =
          std::max(rep.vanish_worst_deviation, std::abs(series[i]));
  }
  rep.plateau_ok = rep.plateau_worst_deviation <= rep.series_allowance &&
                   rep.vanish_worst_deviation <= rep.series_allowance;

  double max_coeff = 0.0;
  for (const auto& c : g.coeffs) max_coeff = std::max(max_coeff, std::abs(c));
  rep.coefficient_margin = 10.0 * g.eta - max_coeff;

  // suffix[j] = sum_{j' > j} 2 |c_{j'}| over the stored range
  std::vector<double> suffix(g.truncation + 1, 0.0);
  for (std::size_t j = g.truncation; j >= 1; --j)
    suffix[j - 1] = suffix[j] + 2.0 * std::abs(g.coeffs[j - 1]);
  rep.tail_margin = 1e300;
  for (std::size_t k = 1; k <= g.truncation; k *= 2) {
    double total = suffix[k] + g.tail_bound(static_cast<double>(g.truncation));
    double bound = 10.0 / (g.eta * static_cast<double>(k));
    rep.tail_margin = std::min(rep.tail_margin, bound - total);
  }

  rep.all_ok = rep.plateau_ok && rep.sandwich_ok && rep.coefficient_margin > 0.0 &&
               rep.tail_margin > 0.0 && rep.range_low >= 0.0 && rep.range_high <= 1.0;
  return rep;
}

}  // namespace polypat
