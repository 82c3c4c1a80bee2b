#include "polypat/util.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace polypat {

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  if (n < 2) return primes;
  std::vector<char> composite(n + 1, 0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return primes;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((__uint128_t)a * b % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (a % n == 0) continue;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i + 1 < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t mod_floor_big(const Int& n, std::uint64_t m) {
  Int r = n % Int(m);
  if (r < 0) r += Int(m);
  return r.convert_to<std::uint64_t>();
}

namespace {
std::atomic<int> g_threads{0};
}

int default_threads() {
  int t = g_threads.load();
  if (t > 0) return t;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_default_threads(int n) { g_threads.store(n > 0 ? n : 0); }

double pairwise_fold(const std::vector<double>& parts) {
  if (parts.empty()) return 0.0;
  std::vector<double> level = parts;
  while (level.size() > 1) {
    std::vector<double> next((level.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      double a = level[2 * i];
      double b = (2 * i + 1 < level.size()) ? level[2 * i + 1] : 0.0;
      next[i] = a + b;
    }
    level.swap(next);
  }
  return level[0];
}

void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn,
                        int threads) {
  if (n == 0) return;
  int nthreads = threads > 0 ? threads : default_threads();
  if (nthreads <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int spawn = std::min<std::size_t>(static_cast<std::size_t>(nthreads), n);
  pool.reserve(spawn);
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

double chunked_sum(std::uint64_t lo, std::uint64_t hi, std::uint64_t chunk_size,
                   const std::function<double(std::uint64_t, std::uint64_t)>& fn,
                   int threads) {
  if (hi <= lo) return 0.0;
  if (chunk_size == 0) chunk_size = 1 << 14;
  std::uint64_t span = hi - lo;
  std::size_t nchunks = static_cast<std::size_t>((span + chunk_size - 1) / chunk_size);
  std::vector<double> parts(nchunks, 0.0);
  parallel_for_index(
      nchunks,
      [&](std::size_t c) {
        std::uint64_t a = lo + c * chunk_size;
        std::uint64_t b = std::min(hi, a + chunk_size);
        parts[c] = fn(a, b);
      },
      threads);
  return pairwise_fold(parts);
}

}  // namespace polypat
