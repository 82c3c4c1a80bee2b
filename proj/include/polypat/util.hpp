#ifndef POLYPAT_UTIL_HPP
#define POLYPAT_UTIL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polypat {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// A computation was asked to exceed its configured budget (memory or
// operation count). Carries the estimated cost in the message.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A stated precondition or module contract was violated by the caller
// or by a user-supplied function.
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text input (family grammar, CSV) failed to parse. `position` is a
// 0-based offset into the input.
struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

inline double to_double(const Rational& r) {
  return r.template convert_to<double>();
}

// Compensated (Kahan) accumulator; used for the long correlation sums.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

std::vector<std::uint64_t> primes_up_to(std::uint64_t n);
bool is_prime_u64(std::uint64_t n);

// Floor residue in [0, m) for possibly negative n.
inline std::uint64_t mod_floor(std::int64_t n, std::uint64_t m) {
  std::int64_t r = n % static_cast<std::int64_t>(m);
  if (r < 0) r += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mod_floor_big(const Int& n, std::uint64_t m);

// ---- deterministic parallelism ----------------------------------------
//
// Work is split into fixed-size chunks addressed by index; workers fill a
// per-chunk slot array in any order and the slots are folded pairwise in
// index order afterwards. The result is bit-identical for every thread
// count, including 1.

int default_threads();
void set_default_threads(int n);

double pairwise_fold(const std::vector<double>& parts);

// fn(lo, hi) -> partial sum over [lo, hi) (1-based caller semantics are up
// to the caller; bounds are passed through untouched).
double chunked_sum(std::uint64_t lo, std::uint64_t hi, std::uint64_t chunk_size,
                   const std::function<double(std::uint64_t, std::uint64_t)>& fn,
                   int threads = 0);

// Runs fn(i) for i in [0, n) on the worker pool; used where per-item results
// go into preallocated slots.
void parallel_for_index(std::size_t n,
                        const std::function<void(std::size_t)>& fn,
                        int threads = 0);

}  // namespace polypat

#endif
