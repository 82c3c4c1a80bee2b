#include "polypat/arith_table.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace polypat {

namespace {

constexpr char kMagic[8] = {'P', 'P', 'A', 'T', 'S', 'V', '0', '\0'};
constexpr std::uint32_t kCacheVersion = 1;

std::uint64_t estimate_bytes(std::uint64_t x, unsigned functions) {
  std::uint64_t per = 0;
  if (functions & static_cast<unsigned>(ArithFn::Lambda)) per += 4;
  if (functions & static_cast<unsigned>(ArithFn::Mu)) per += 1;
  if (functions & (ArithFn::Liouville | ArithFn::BigOmega)) per += 1;
  if (functions & static_cast<unsigned>(ArithFn::SmallOmega)) per += 1;
  if (functions & static_cast<unsigned>(ArithFn::Tau)) per += 4;
  return per * (x + 1) + 16 * 4096;  // sieve scratch
}

}  // namespace

ArithmeticTable ArithmeticTable::build(std::uint64_t x, unsigned functions,
                                       const SieveOptions& opts) {
  if (x < 1) throw ContractError("build_table: X must be >= 1");
  if (x > opts.max_x)
    throw CapacityError("build_table: X=" + std::to_string(x) +
                        " exceeds configured ceiling " + std::to_string(opts.max_x));
  std::uint64_t bytes = estimate_bytes(x, functions);
  if (bytes > opts.max_bytes)
    throw CapacityError("build_table: estimated " + std::to_string(bytes) +
                        " bytes exceeds budget " + std::to_string(opts.max_bytes));

  ArithmeticTable t;
  t.x_ = x;
  t.functions_ = functions;
  const bool want_lambda = functions & static_cast<unsigned>(ArithFn::Lambda);
  const bool want_mu = functions & static_cast<unsigned>(ArithFn::Mu);
  const bool want_bigo = functions & (ArithFn::Liouville | ArithFn::BigOmega);
  const bool want_smallo = functions & static_cast<unsigned>(ArithFn::SmallOmega);
  const bool want_tau = functions & static_cast<unsigned>(ArithFn::Tau);

  if (want_lambda) t.pp_base_.assign(x + 1, 0);
  if (want_mu) t.mu_.assign(x + 1, 0);
  if (want_bigo) t.big_omega_.assign(x + 1, 0);
  if (want_smallo) t.small_omega_.assign(x + 1, 0);
  if (want_tau) t.tau_.assign(x + 1, 1);

  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while ((root + 1) * (root + 1) <= x) ++root;
  while (root > 0 && root * root > x) --root;
  std::vector<std::uint64_t> base = primes_up_to(root);

  const std::uint64_t seg = std::max<std::uint64_t>(opts.segment_size, 16);
  std::vector<std::uint64_t> rem(seg);
  std::vector<std::uint32_t> spf(seg);
  std::vector<std::uint8_t> nfac(seg);
  std::vector<std::uint8_t> nfac_tot(seg);
  std::vector<std::uint32_t> ndiv(seg);
  std::vector<std::uint8_t> sqfree(seg);

  for (std::uint64_t lo = 1; lo <= x; lo += seg) {
    std::uint64_t hi = std::min(x, lo + seg - 1);
    std::uint64_t len = hi - lo + 1;
    for (std::uint64_t i = 0; i < len; ++i) {
      rem[i] = lo + i;
      spf[i] = 0;
      nfac[i] = 0;
      nfac_tot[i] = 0;
      ndiv[i] = 1;
      sqfree[i] = 1;
    }
    for (std::uint64_t p : base) {
      std::uint64_t first = ((lo + p - 1) / p) * p;
      for (std::uint64_t n = first; n <= hi; n += p) {
        std::uint64_t i = n - lo;
        unsigned e = 0;
        while (rem[i] % p == 0) {
          rem[i] /= p;
          ++e;
        }
        if (spf[i] == 0) spf[i] = static_cast<std::uint32_t>(p);
        nfac[i] += 1;
        nfac_tot[i] += e;
        ndiv[i] *= (e + 1);
        if (e >= 2) sqfree[i] = 0;
      }
    }
    for (std::uint64_t i = 0; i < len; ++i) {
      std::uint64_t n = lo + i;
      if (rem[i] > 1) {
        // one leftover prime factor > sqrt(X), exponent 1
        if (spf[i] == 0) spf[i] = static_cast<std::uint32_t>(rem[i]);
        nfac[i] += 1;
        nfac_tot[i] += 1;
        ndiv[i] *= 2;
      }
      if (want_lambda)
        t.pp_base_[n] = (n > 1 && nfac[i] == 1) ? spf[i] : 0;
      if (want_mu)
        t.mu_[n] = sqfree[i] ? ((nfac[i] & 1) ? -1 : 1) : 0;
      if (want_bigo) t.big_omega_[n] = nfac_tot[i];
      if (want_smallo) t.small_omega_[n] = nfac[i];
      if (want_tau) t.tau_[n] = ndiv[i];
    }
  }
  return t;
}

std::uint64_t ArithmeticTable::index(std::int64_t n, ArithFn f) const {
  if (n == 0) throw std::domain_error("arithmetic functions are undefined at 0");
  std::uint64_t a = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  if (a > x_)
    throw std::out_of_range("query out of range: |n|=" + std::to_string(a) +
                            " > X=" + std::to_string(x_));
  if (!(functions_ & static_cast<unsigned>(f)))
    throw ContractError("queried function not built into this table");
  return a;
}

std::uint64_t ArithmeticTable::prime_power_base(std::int64_t n) const {
  return pp_base_[index(n, ArithFn::Lambda)];
}

double ArithmeticTable::lambda(std::int64_t n) const {
  std::uint64_t p = pp_base_[index(n, ArithFn::Lambda)];
  return p ? std::log(static_cast<double>(p)) : 0.0;
}

int ArithmeticTable::mu(std::int64_t n) const { return mu_[index(n, ArithFn::Mu)]; }

int ArithmeticTable::liouville(std::int64_t n) const {
  return (big_omega_[index(n, ArithFn::Liouville)] & 1) ? -1 : 1;
}

unsigned ArithmeticTable::big_omega(std::int64_t n) const {
  return big_omega_[index(n, ArithFn::BigOmega)];
}

unsigned ArithmeticTable::small_omega(std::int64_t n) const {
  return small_omega_[index(n, ArithFn::SmallOmega)];
}

std::uint64_t ArithmeticTable::tau(std::int64_t n) const {
  return tau_[index(n, ArithFn::Tau)];
}

double ArithmeticTable::chebyshev_sum(std::uint64_t upto) const {
  if (upto > x_) throw std::out_of_range("chebyshev_sum: bound exceeds table");
  KahanSum s;
  for (std::uint64_t n = 2; n <= upto; ++n) {
    std::uint32_t p = pp_base_[n];
    if (p) s.add(std::log(static_cast<double>(p)));
  }
  return s.value();
}

namespace {

template <class T>
void write_vec(std::ofstream& out, const std::vector<T>& v) {
  std::uint64_t n = v.size();
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  if (n) out.write(reinterpret_cast<const char*>(v.data()), n * sizeof(T));
}

template <class T>
void read_vec(std::ifstream& in, std::vector<T>& v) {
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  v.resize(n);
  if (n) in.read(reinterpret_cast<char*>(v.data()), n * sizeof(T));
}

}  // namespace

void ArithmeticTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open cache file for writing: " + path);
  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(&kCacheVersion), sizeof kCacheVersion);
  out.write(reinterpret_cast<const char*>(&x_), sizeof x_);
  out.write(reinterpret_cast<const char*>(&functions_), sizeof functions_);
  write_vec(out, pp_base_);
  write_vec(out, mu_);
  write_vec(out, big_omega_);
  write_vec(out, small_omega_);
  write_vec(out, tau_);
  if (!out) throw std::runtime_error("short write to cache file: " + path);
}

ArithmeticTable ArithmeticTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open cache file: " + path);
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw std::runtime_error("not a sieve cache file: " + path);
  std::uint32_t version = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  if (version != kCacheVersion)
    throw std::runtime_error("unsupported sieve cache version " + std::to_string(version));
  ArithmeticTable t;
  in.read(reinterpret_cast<char*>(&t.x_), sizeof t.x_);
  in.read(reinterpret_cast<char*>(&t.functions_), sizeof t.functions_);
  read_vec(in, t.pp_base_);
  read_vec(in, t.mu_);
  read_vec(in, t.big_omega_);
  read_vec(in, t.small_omega_);
  read_vec(in, t.tau_);
  if (!in) throw std::runtime_error("truncated sieve cache file: " + path);
  return t;
}

}  // namespace polypat
