#ifndef POLYPAT_FFT_HPP
#define POLYPAT_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace polypat {

inline std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// In-place iterative radix-2 FFT; data.size() must be a power of two.
// No normalization is applied on either direction.
void fft_pow2(std::vector<std::complex<double>>& data, bool inverse);

}  // namespace polypat

#endif
