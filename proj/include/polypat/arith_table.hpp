#ifndef POLYPAT_ARITH_TABLE_HPP
#define POLYPAT_ARITH_TABLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polypat/util.hpp"

namespace polypat {

// Which arithmetic functions a table carries. Lambda always implies the
// prime-power structure (the base prime p of n = p^j is stored, never log p,
// so the sieve output is integer-exact and the log happens at query time).
enum class ArithFn : unsigned {
  Lambda = 1u << 0,
  Mu = 1u << 1,
  Liouville = 1u << 2,  // via Omega parity
  BigOmega = 1u << 3,
  SmallOmega = 1u << 4,
  Tau = 1u << 5,
};

inline unsigned operator|(ArithFn a, ArithFn b) {
  return static_cast<unsigned>(a) | static_cast<unsigned>(b);
}
inline unsigned operator|(unsigned a, ArithFn b) {
  return a | static_cast<unsigned>(b);
}
constexpr unsigned kAllArithFns = 0x3f;

struct SieveOptions {
  std::uint64_t segment_size = 1u << 17;
  std::uint64_t max_x = 1000000000;                 // configured ceiling on X
  std::uint64_t max_bytes = std::uint64_t(4) << 30;  // memory budget for the tables
};

// Sieved values of Lambda, mu, lambda, Omega, omega, tau on [1, X], extended
// to negative arguments as even functions at query time. Immutable after
// construction; concurrent reads are safe.
class ArithmeticTable {
 public:
  static ArithmeticTable build(std::uint64_t x, unsigned functions,
                               const SieveOptions& opts = {});

  std::uint64_t upper_bound() const { return x_; }
  unsigned functions_available() const { return functions_; }
  bool has(ArithFn f) const { return functions_ & static_cast<unsigned>(f); }

  // Base prime p if |n| = p^j, else 0. Lambda(n) = log(prime_power_base(n)).
  std::uint64_t prime_power_base(std::int64_t n) const;
  double lambda(std::int64_t n) const;
  int mu(std::int64_t n) const;
  int liouville(std::int64_t n) const;
  unsigned big_omega(std::int64_t n) const;
  unsigned small_omega(std::int64_t n) const;
  std::uint64_t tau(std::int64_t n) const;

  // sum_{n <= upto} Lambda(n), compensated summation.
  double chebyshev_sum(std::uint64_t upto) const;

  void save(const std::string& path) const;
  static ArithmeticTable load(const std::string& path);

 private:
  ArithmeticTable() = default;
  std::uint64_t index(std::int64_t n, ArithFn f) const;

  std::uint64_t x_ = 0;
  unsigned functions_ = 0;
  std::vector<std::uint32_t> pp_base_;  // 0 unless n is a prime power
  std::vector<std::int8_t> mu_;
  std::vector<std::uint8_t> big_omega_;
  std::vector<std::uint8_t> small_omega_;
  std::vector<std::uint32_t> tau_;
};

}  // namespace polypat

#endif
