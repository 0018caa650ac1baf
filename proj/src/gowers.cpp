#include "ergolab/gowers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "ergolab/error.hpp"
#include "ergolab/fft.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/spectra.hpp"

namespace ergolab {

CyclicSequence::CyclicSequence(std::vector<Complex> values) : values_(std::move(values)) {
  if (values_.empty()) throw DegenerateError("CyclicSequence: modulus must be >= 1");
}

Complex CyclicSequence::operator()(std::int64_t x) const {
  const std::int64_t m = modulus();
  std::int64_t r = x % m;
  if (r < 0) r += m;
  return values_[static_cast<std::size_t>(r)];
}

namespace {

void check_degree(int d, const char* where) {
  if (d < 1 || d > 16) throw PreconditionError(std::string(where) + ": degree d must lie in [1, 16]");
}

double power_of_two_root(double raw, int d) {
  return std::pow(std::max(raw, 0.0), std::ldexp(1.0, -d));
}

// sum |f^(xi)|^4 with 1/M normalization, on the smallest ring that avoids
// wrap-around when the support sits in a short linear window.
double u2_raw(std::span<const Complex> f) {
  const auto m = static_cast<std::int64_t>(f.size());
  std::int64_t lo = -1, hi = -1;
  for (std::int64_t i = 0; i < m; ++i) {
    if (f[i] != Complex{}) {
      if (lo < 0) lo = i;
      hi = i;
    }
  }
  if (lo < 0) return 0.0;
  const std::int64_t len = hi - lo + 1;
  std::int64_t ring = m;
  if (2 * len - 1 < m) ring = 2 * len - 1;
  std::vector<Complex> buf(static_cast<std::size_t>(ring));
  if (ring == m) {
    std::copy(f.begin(), f.end(), buf.begin());
  } else {
    std::copy(f.begin() + lo, f.begin() + hi + 1, buf.begin());
  }
  dft_negative(buf);
  const double r = static_cast<double>(ring);
  double s = 0.0;
  for (const auto& v : buf) {
    const double a = std::norm(v);
    s += a * a;
  }
  // sum |F/ring|^4 on the small ring, rescaled from ring^3 to M^3 quadruple counts
  const double scale = r / static_cast<double>(m);
  return s / (r * r * r * r) * scale * scale * scale;
}

double raw_serial(std::span<const Complex> f, int d) {
  const auto m = static_cast<std::int64_t>(f.size());
  if (d == 1) {
    CompensatedSum s;
    for (const auto& v : f) s.add(v);
    return std::norm(s.value() / static_cast<double>(m));
  }
  if (d == 2) return u2_raw(f);
  std::vector<Complex> g(f.size());
  double total = 0.0;
  for (std::int64_t h = 0; h < m; ++h) {
    bool any = false;
    for (std::int64_t x = 0; x < m; ++x) {
      g[x] = f[(x + h) % m] * std::conj(f[x]);
      any = any || g[x] != Complex{};
    }
    if (any) total += raw_serial(g, d - 1);
  }
  return total / static_cast<double>(m);
}

double raw_power(std::span<const Complex> f, int d) {
  const auto m = static_cast<std::int64_t>(f.size());
  if (d <= 2) return raw_serial(f, d);
  std::vector<double> part(static_cast<std::size_t>(m), 0.0);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t h) {
    std::vector<Complex> g(f.size());
    bool any = false;
    for (std::int64_t x = 0; x < m; ++x) {
      g[x] = f[(x + static_cast<std::int64_t>(h)) % m] * std::conj(f[x]);
      any = any || g[x] != Complex{};
    }
    if (any) part[h] = raw_serial(g, d - 1);
  });
  double total = 0.0;
  for (double v : part) total += v;
  return total / static_cast<double>(m);
}

// E_h |E_x f(x) conj(f(x+h))|^2, an O(M^2) route to the U^2 power.
double u2_autocorrelation(std::span<const Complex> f) {
  const auto m = static_cast<std::int64_t>(f.size());
  double total = 0.0;
  for (std::int64_t h = 0; h < m; ++h) {
    Complex s = 0.0;
    for (std::int64_t x = 0; x < m; ++x) s += f[x] * std::conj(f[(x + h) % m]);
    total += std::norm(s / static_cast<double>(m));
  }
  return total / static_cast<double>(m);
}

}  // namespace

Complex gowers_inner(std::span<const CyclicSequence> family, int d) {
  check_degree(d, "gowers_inner");
  const std::size_t vertices = std::size_t{1} << d;
  if (family.size() != vertices) {
    throw ShapeError("gowers_inner: family has " + std::to_string(family.size()) + " functions, expected 2^d = " +
                     std::to_string(vertices));
  }
  const std::int64_t m = family[0].modulus();
  for (const auto& f : family) {
    if (f.modulus() != m) throw ShapeError("gowers_inner: moduli differ within the family");
  }
  const double cells = std::pow(static_cast<double>(m), d + 1);
  if (cells > 0x1.0p34) throw CapacityError("gowers_inner: M^{d+1} exceeds 2^34 terms");

  std::int64_t h_count = 1;
  for (int i = 0; i < d; ++i) h_count *= m;
  std::vector<Complex> part(static_cast<std::size_t>(m));
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t xi) {
    const auto x = static_cast<std::int64_t>(xi);
    std::vector<std::int64_t> h(static_cast<std::size_t>(d), 0);
    CompensatedSum acc;
    for (std::int64_t t = 0; t < h_count; ++t) {
      std::int64_t rem = t;
      for (int i = 0; i < d; ++i) {
        h[i] = rem % m;
        rem /= m;
      }
      Complex prod = 1.0;
      for (std::size_t c = 0; c < vertices; ++c) {
        std::int64_t arg = x;
        for (int i = 0; i < d; ++i) {
          if (c >> i & 1u) arg += h[i];
        }
        const Complex v = family[c](arg);
        prod *= (std::popcount(c) & 1) ? std::conj(v) : v;
      }
      acc.add(prod);
    }
    part[xi] = acc.value();
  });
  CompensatedSum total;
  for (const auto& v : part) total.add(v);
  return total.value() / cells;
}

GowersResult gowers_norm_cyclic(const CyclicSequence& f, int d) {
  check_degree(d, "gowers_norm_cyclic");
  GowersResult r;
  r.d = d;
  r.raw_power = raw_power(f.values(), d);
  r.norm = power_of_two_root(r.raw_power, d);
  r.method = d == 1 ? "mean" : d == 2 ? "fourier" : "derivative_recursion";
  if (d == 2 && f.modulus() <= 4096) r.cross_check = u2_autocorrelation(f.values());
  return r;
}

GowersResult gowers_norm_interval(std::span<const Complex> f, int d) {
  check_degree(d, "gowers_norm_interval");
  if (f.empty()) throw PreconditionError("gowers_norm_interval: N must be >= 1");
  const auto n = static_cast<std::int64_t>(f.size());
  const std::int64_t m = (std::int64_t{1} << d) * n;
  std::vector<Complex> padded(static_cast<std::size_t>(m));
  std::vector<Complex> indicator(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < n; ++i) {
    padded[i + 1] = f[i];
    indicator[i + 1] = 1.0;
  }
  const double num = raw_power(padded, d);
  const double den = raw_power(indicator, d);
  GowersResult r;
  r.d = d;
  r.raw_power = num / den;
  r.norm = power_of_two_root(r.raw_power, d);
  r.method = "interval_ratio";
  return r;
}

CyclicSequence discrete_derivative(const CyclicSequence& f, std::int64_t h) {
  const std::int64_t m = f.modulus();
  std::vector<Complex> g(static_cast<std::size_t>(m));
  for (std::int64_t x = 0; x < m; ++x) g[x] = f(x + h) * std::conj(f(x));
  return CyclicSequence(std::move(g));
}

ExperimentReport phase_invariance_check(const CyclicSequence& f, std::span<const std::int64_t> phi_numerators,
                                        int d) {
  check_degree(d, "phase_invariance_check");
  const std::int64_t m = f.modulus();
  std::vector<Complex> g(static_cast<std::size_t>(m));
  for (std::int64_t x = 0; x < m; ++x) {
    __int128 acc = 0, pw = 1;
    for (const std::int64_t a : phi_numerators) {
      acc = (acc + static_cast<__int128>(((a % m) + m) % m) * pw) % m;
      pw = pw * x % m;
    }
    const double t = static_cast<double>(static_cast<std::int64_t>(acc)) / static_cast<double>(m);
    g[x] = cis_turns(t) * f(x);
  }
  const double a = gowers_norm_cyclic(f, d).norm;
  const double b = gowers_norm_cyclic(CyclicSequence(std::move(g)), d).norm;
  ExperimentReport r("phase_invariance", {"norm_f", "norm_modulated", "difference"});
  r.header["d"] = d;
  r.header["M"] = m;
  r.header["phase_degree"] = phi_numerators.empty() ? 0 : static_cast<int>(phi_numerators.size()) - 1;
  r.add_row({a, b, std::abs(a - b)});
  r.summary["norm_f"] = a;
  r.summary["norm_modulated"] = b;
  r.summary["difference"] = std::abs(a - b);
  return r;
}

ExperimentReport linear_phase_sup_bound(std::span<const Complex> f, int oversample) {
  if (f.size() < 2) throw PreconditionError("linear_phase_sup_bound: N must be >= 2");
  const double n = static_cast<double>(f.size());
  std::vector<Complex> c(f.begin(), f.end());
  for (auto& v : c) v /= n;
  const SupEstimate s = sup_norm(TrigPolynomial(1, std::move(c)), oversample);
  const double rhs = gowers_norm_interval(f, 2).norm;
  ExperimentReport r("linear_phase_sup_bound", {"N", "lhs", "lhs_error", "rhs"});
  r.add_row({n, s.value, s.error_bound, rhs});
  r.summary["lhs"] = s.value;
  r.summary["lhs_error"] = s.error_bound;
  r.summary["rhs"] = rhs;
  // certified: the true sup is at most value + error
  r.summary["holds"] = s.value <= rhs + 1e-12;
  r.summary["holds_certified"] = s.value + s.error_bound <= rhs + 1e-12;
  return r;
}

ExperimentReport cbs_gowers_check(std::span<const CyclicSequence> family, int d) {
  const Complex inner = gowers_inner(family, d);
  double rhs = 1.0;
  for (const auto& f : family) rhs *= gowers_norm_cyclic(f, d).norm;
  ExperimentReport r("cbs_gowers", {"lhs", "rhs"});
  r.header["d"] = d;
  r.add_row({std::abs(inner), rhs});
  r.summary["lhs"] = std::abs(inner);
  r.summary["rhs"] = rhs;
  r.summary["holds"] = std::abs(inner) <= rhs + 1e-10;
  return r;
}

namespace {

double ghk_raw(std::span<const Complex> g, int k, std::int64_t h_len, std::int64_t window) {
  if (k == 1) {
    CompensatedSum s;
    for (std::int64_t l = 0; l < window; ++l) s.add(g[l]);
    return std::norm(s.value() / static_cast<double>(window));
  }
  std::vector<Complex> next;
  double total = 0.0;
  for (std::int64_t h = 0; h < h_len; ++h) {
    const auto len = static_cast<std::int64_t>(g.size()) - h;
    next.resize(static_cast<std::size_t>(len));
    for (std::int64_t l = 0; l < len; ++l) next[l] = g[l + h] * std::conj(g[l]);
    total += ghk_raw(next, k - 1, h_len, window);
  }
  return total / static_cast<double>(h_len);
}

}  // namespace

GhkResult ghk_seminorm_empirical(std::span<const Complex> orbit, int k, std::int64_t h) {
  if (k < 1) throw PreconditionError("ghk_seminorm_empirical: k must be >= 1");
  const auto len = static_cast<std::int64_t>(orbit.size());
  if (h < 1 || 4 * h > len) throw PreconditionError("ghk_seminorm_empirical: need 1 <= H <= L/4");
  const std::int64_t window = len - (k - 1) * h;
  if (window < 1) throw PreconditionError("ghk_seminorm_empirical: (k-1) H must be < L");
  if (std::pow(static_cast<double>(h), k - 1) * static_cast<double>(len) > 0x1.0p34) {
    throw CapacityError("ghk_seminorm_empirical: H^{k-1} L exceeds 2^34 operations");
  }
  GhkResult r;
  r.raw = ghk_raw(orbit, k, h, window);
  r.clamped = r.raw < 0.0;
  r.value = power_of_two_root(r.raw, k);
  return r;
}

}  // namespace ergolab
