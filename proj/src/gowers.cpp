#include "polypat/gowers.hpp"

#include <cmath>

#include "polypat/fft.hpp"

namespace polypat {

namespace {

using cplx = std::complex<double>;

bool is_zero(const cplx& z) { return z.real() == 0.0 && z.imag() == 0.0; }

// Strip zero padding so budgets reflect the true support.
Series trim(const Series& f) {
  std::size_t a = 0, b = f.v.size();
  while (a < b && is_zero(f.v[a])) ++a;
  while (b > a && is_zero(f.v[b - 1])) --b;
  Series out;
  out.base = f.base + static_cast<std::int64_t>(a);
  out.v.assign(f.v.begin() + a, f.v.begin() + b);
  return out;
}

double pow_u64(std::uint64_t base, unsigned e) {
  double r = 1;
  while (e--) r *= static_cast<double>(base);
  return r;
}

// ||f||^2 for s=1 is |sum f|^2.
double power_s1(const Series& f) {
  cplx total(0, 0);
  for (const auto& z : f.v) total += z;
  return std::norm(total);
}

double naive_power(const Series& f, unsigned s) {
  const std::int64_t lo = f.lo();
  const std::int64_t n = static_cast<std::int64_t>(f.size());
  if (n == 0) return 0.0;
  cplx sum(0, 0);
  if (s == 1) {
    for (std::int64_t x = 0; x < n; ++x) {
      if (is_zero(f.v[x])) continue;
      for (std::int64_t h = -x; h < n - x; ++h)
        sum += f.v[x] * std::conj(f.v[x + h]);
    }
  } else if (s == 2) {
    for (std::int64_t x = 0; x < n; ++x) {
      cplx fx = f.v[x];
      if (is_zero(fx)) continue;
      for (std::int64_t h1 = -x; h1 < n - x; ++h1) {
        cplx f1 = f.v[x + h1];
        if (is_zero(f1)) continue;
        cplx partial = fx * std::conj(f1);
        for (std::int64_t h2 = -x; h2 < n - x; ++h2) {
          cplx f2 = f.v[x + h2];
          if (is_zero(f2)) continue;
          cplx f12 = f.at(lo + x + h1 + h2);
          sum += partial * std::conj(f2) * f12;
        }
      }
    }
  } else if (s == 3) {
    for (std::int64_t x = 0; x < n; ++x) {
      cplx fx = f.v[x];
      if (is_zero(fx)) continue;
      for (std::int64_t h1 = -x; h1 < n - x; ++h1) {
        cplx f1 = f.v[x + h1];
        if (is_zero(f1)) continue;
        for (std::int64_t h2 = -x; h2 < n - x; ++h2) {
          cplx f2 = f.v[x + h2];
          if (is_zero(f2)) continue;
          cplx f12 = f.at(lo + x + h1 + h2);
          if (is_zero(f12)) continue;
          cplx head = fx * std::conj(f1) * std::conj(f2) * f12;
          for (std::int64_t h3 = -x; h3 < n - x; ++h3) {
            cplx f3 = f.v[x + h3];
            if (is_zero(f3)) continue;
            cplx f13 = f.at(lo + x + h1 + h3);
            cplx f23 = f.at(lo + x + h2 + h3);
            cplx f123 = f.at(lo + x + h1 + h2 + h3);
            sum += head * std::conj(f3) * f13 * f23 * std::conj(f123);
          }
        }
      }
    }
  } else {
    throw CapacityError("naive Gowers evaluation supports s <= 3");
  }
  return sum.real();
}

// Delta_h f(x) = conj(f(x+h)) f(x) on the overlap of the two supports.
Series difference(const Series& f, std::int64_t h) {
  Series g;
  std::int64_t lo = std::max(f.lo(), f.lo() - h);
  std::int64_t hi = std::min(f.hi(), f.hi() - h);
  if (hi <= lo) return g;
  g.base = lo;
  g.v.resize(static_cast<std::size_t>(hi - lo));
  for (std::int64_t x = lo; x < hi; ++x)
    g.v[static_cast<std::size_t>(x - lo)] = std::conj(f.at(x + h)) * f.at(x);
  return g;
}

double recursive_power(const Series& f, unsigned s) {
  if (f.size() == 0) return 0.0;
  if (s == 1) return power_s1(f);
  std::int64_t n = static_cast<std::int64_t>(f.size());
  KahanSum total;
  for (std::int64_t h = -(n - 1); h <= n - 1; ++h)
    total.add(recursive_power(difference(f, h), s - 1));
  return total.value();
}

double fft_u2_power(const Series& f) {
  std::size_t m = next_pow2(2 * f.size() + 1);
  std::vector<cplx> buf(m, cplx(0, 0));
  for (std::size_t i = 0; i < f.size(); ++i) buf[i] = f.v[i];
  fft_pow2(buf, false);
  KahanSum total;
  for (const auto& z : buf) {
    double q = std::norm(z);
    total.add(q * q);
  }
  return total.value() / static_cast<double>(m);
}

double estimated_ops(std::uint64_t len, unsigned s, GowersMethod m) {
  switch (m) {
    case GowersMethod::naive:
      return pow_u64(len, s + 1);
    case GowersMethod::recursive:
      return 2.0 * pow_u64(len, s);
    case GowersMethod::fft_u2:
      return 64.0 * static_cast<double>(len) * (1.0 + std::log2(double(len) + 2));
    default:
      return 0.0;
  }
}

GowersMethod resolve_method(std::size_t len, unsigned s, GowersMethod method) {
  if (method == GowersMethod::automatic)
    return (s == 2 && len > 48) ? GowersMethod::fft_u2 : GowersMethod::recursive;
  return method;
}

double unnormalised_power(const Series& raw, unsigned s, GowersMethod method,
                          const GowersBudget& budget) {
  if (s < 1) throw ContractError("Gowers norm requires s >= 1");
  Series f = trim(raw);
  if (f.size() == 0) return 0.0;
  method = resolve_method(f.size(), s, method);
  if (method == GowersMethod::fft_u2 && s != 2)
    throw ContractError("fft_u2 method is only valid for s=2");
  double est = estimated_ops(f.size(), s, method);
  if (est > static_cast<double>(budget.max_ops))
    throw CapacityError("Gowers evaluation would need ~" + std::to_string(est) +
                        " operations (budget " + std::to_string(budget.max_ops) + ")");
  double power = 0.0;
  switch (method) {
    case GowersMethod::naive:
      power = naive_power(f, s);
      break;
    case GowersMethod::recursive:
      power = recursive_power(f, s);
      break;
    case GowersMethod::fft_u2:
      power = fft_u2_power(f);
      break;
    default:
      break;
  }
  return std::max(power, 0.0);
}

// Number of h in Z^s with |h_1|+...+|h_s| = t.
double abs_sum_count(unsigned s, std::int64_t t) {
  if (t == 0) return 1.0;
  double total = 0.0;
  double binom_sj = static_cast<double>(s);  // C(s, j)
  for (unsigned j = 1; j <= s; ++j) {
    // C(t-1, j-1) compositions of t into j positive parts, 2^j sign choices
    double comp = 1.0;
    for (unsigned i = 1; i < j; ++i)
      comp *= static_cast<double>(t - i) / static_cast<double>(i);
    if (t >= j) total += std::ldexp(binom_sj * comp, static_cast<int>(j));
    binom_sj *= static_cast<double>(s - j) / static_cast<double>(j + 1);
  }
  return total;
}

}  // namespace

Series Series::ones(std::int64_t lo, std::int64_t hi_inclusive) {
  Series out;
  out.base = lo;
  if (hi_inclusive >= lo)
    out.v.assign(static_cast<std::size_t>(hi_inclusive - lo + 1), cplx(1, 0));
  return out;
}

double unnormalised_norm(const Series& f, unsigned s, GowersMethod method,
                         const GowersBudget& budget) {
  double power = unnormalised_power(f, s, method, budget);
  return std::pow(power, 1.0 / std::ldexp(1.0, static_cast<int>(s)));
}

// ||1_{[L]}||^{2^s} = sum_h (L - sum|h_i|)_+  (all cube corners in range).
double ones_norm_power(std::uint64_t length, unsigned s) {
  double total = 0.0;
  for (std::int64_t t = static_cast<std::int64_t>(length) - 1; t >= 0; --t)
    total += static_cast<double>(static_cast<std::int64_t>(length) - t) *
             abs_sum_count(s, t);
  return total;
}

GowersResult interval_norm(const Series& f, std::int64_t lo, std::int64_t hi,
                           unsigned s, GowersMethod method, const GowersBudget& budget) {
  if (hi < lo) throw ContractError("interval_norm: empty interval");
  GowersResult res;
  res.s = s;
  res.interval_lo = lo;
  res.interval_hi = hi;
  res.method = resolve_method(static_cast<std::size_t>(hi - lo + 1), s, method);

  Series g;
  g.base = lo;
  g.v.resize(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = lo; n <= hi; ++n)
    g.v[static_cast<std::size_t>(n - lo)] = f.at(n);

  double num_power = unnormalised_power(g, s, method, budget);
  double den_power = ones_norm_power(static_cast<std::uint64_t>(hi - lo + 1), s);
  double inv = 1.0 / std::ldexp(1.0, static_cast<int>(s));
  res.unnormalised = std::pow(num_power, inv);
  res.normalised = std::pow(num_power / den_power, inv);
  return res;
}

GcsResult gcs_check(const std::vector<Series>& fs, unsigned s, const GowersBudget& budget) {
  if (s < 1 || s > 3) throw CapacityError("gcs_check: exhaustive sum limited to s <= 3");
  if (fs.size() != (std::size_t(1) << s))
    throw ContractError("gcs_check: need exactly 2^s functions");

  std::vector<Series> f;
  f.reserve(fs.size());
  for (const auto& g : fs) f.push_back(trim(g));

  double est = static_cast<double>(f[0].size());
  for (unsigned i = 0; i < s; ++i) est *= static_cast<double>(f[std::size_t(1) << i].size() + 1);
  if (est > static_cast<double>(budget.max_ops))
    throw CapacityError("gcs_check: ~" + std::to_string(est) + " operations exceed budget");

  cplx total(0, 0);
  std::vector<std::int64_t> h(s, 0);
  // x runs over supp(f_0); h_i is constrained by supp(f_{e_i}).
  for (std::int64_t x = f[0].lo(); x < f[0].hi(); ++x) {
    if (is_zero(f[0].at(x))) continue;
    std::function<void(unsigned, cplx)> rec = [&](unsigned i, cplx acc) {
      if (i == s) {
        // multiply the factors for patterns with >= 2 bits
        for (std::size_t w = 0; w < f.size(); ++w) {
          if (w == 0 || (w & (w - 1)) == 0) continue;
          std::int64_t pt = x;
          for (unsigned b = 0; b < s; ++b)
            if (w & (std::size_t(1) << b)) pt += h[b];
          acc *= f[w].at(pt);
          if (is_zero(acc)) return;
        }
        total += acc;
        return;
      }
      const Series& fi = f[std::size_t(1) << i];
      for (std::int64_t hv = fi.lo() - x; hv < fi.hi() - x; ++hv) {
        cplx fac = fi.at(x + hv);
        if (is_zero(fac)) continue;
        h[i] = hv;
        rec(i + 1, acc * fac);
      }
    };
    rec(0, f[0].at(x));
  }

  GcsResult res;
  res.lhs = std::abs(total);
  res.rhs = 1.0;
  for (const auto& g : fs) res.rhs *= unnormalised_norm(g, s, GowersMethod::recursive, budget);
  res.ok = res.lhs <= res.rhs * (1.0 + 1e-9) + 1e-12;
  return res;
}

Rational mu_H(double H, std::int64_t h) {
  if (H < 1.0) throw ContractError("mu_H requires H >= 1");
  std::int64_t m = static_cast<std::int64_t>(std::floor(H));
  std::int64_t ah = h < 0 ? -h : h;
  Int num = ah >= m ? Int(0) : Int(m - ah);
  return Rational(num, Int(m) * Int(m));
}

}  // namespace polypat
