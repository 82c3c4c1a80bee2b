#ifndef POLYPAT_VINOGRADOV_HPP
#define POLYPAT_VINOGRADOV_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "polypat/util.hpp"

namespace polypat {

// Smoothed 1-periodic indicator of [alpha, beta]: the indicator of
// [alpha + eta/2, beta - eta/2] convolved with the uniform kernel of total
// width eta. Plateau [alpha+eta, beta-eta], support [alpha, beta], mean
// beta - alpha - eta.
struct SmoothedIndicator {
  double alpha = 0.0;
  double beta = 0.0;
  double eta = 0.0;
  std::size_t truncation = 0;  // J
  double constant_term = 0.0;  // beta - alpha - eta
  std::vector<std::complex<double>> coeffs;  // c_j for j = 1..J; c_{-j} = conj(c_j)

  double eval_exact(double x) const;   // piecewise-linear closed form
  double eval_series(double x) const;  // truncated Fourier sum
  std::complex<double> coefficient(std::int64_t j) const;
  // Analytic bound on sum_{|j|>K} |c_j| for this construction: 2/(pi^2 eta K).
  double tail_bound(double k) const;
};

SmoothedIndicator build_smoothed_indicator(double alpha, double beta, double eta,
                                           std::size_t truncation);

struct VinogradovReport {
  // property (1): plateau/vanishing via the truncated series; the allowance
  // is the construction's tail bound at J.
  double plateau_worst_deviation = 0.0;
  double vanish_worst_deviation = 0.0;
  double series_allowance = 0.0;
  bool plateau_ok = false;
  // range and periodicity of the exact evaluator on the grid
  double range_low = 0.0, range_high = 0.0;
  double periodicity_worst = 0.0;
  bool sandwich_ok = false;
  // property (2): margin = 10 eta - max_j |c_j|
  double coefficient_margin = 0.0;
  // property (3): min over dyadic K of 10/(eta K) - (partial tail + remainder)
  double tail_margin = 0.0;
  bool all_ok = false;
};

VinogradovReport verify_indicator(const SmoothedIndicator& g, std::size_t grid_size);

}  // namespace polypat

#endif
