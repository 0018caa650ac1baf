#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ergolab::oracle {

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int mobius(std::int64_t n) {
  int sign = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

int liouville(std::int64_t n) {
  int omega = 0;
  for (const auto& pe : factorize(n)) omega += pe.second;
  return omega % 2 ? -1 : 1;
}

std::int64_t mertens(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t k = 1; k <= n; ++k) s += mobius(k);
  return s;
}

int thue_morse(std::int64_t n) {
  int s = 0;
  for (auto m = static_cast<std::uint64_t>(n); m; m >>= 1) s += static_cast<int>(m & 1u);
  return s % 2 ? -1 : 1;
}

int rudin_shapiro(std::int64_t n) {
  int count = 0;
  auto m = static_cast<std::uint64_t>(n);
  while (m) {
    if ((m & 3u) == 3u) ++count;
    m >>= 1;
  }
  return count % 2 ? -1 : 1;
}

namespace {

Complex family_term(const std::vector<std::vector<Complex>>& family, int d, std::int64_t x,
                    const std::vector<std::int64_t>& h) {
  const auto m = static_cast<std::int64_t>(family[0].size());
  Complex prod = 1.0;
  for (std::size_t c = 0; c < family.size(); ++c) {
    std::int64_t arg = x;
    int weight = 0;
    for (int i = 0; i < d; ++i) {
      if ((c >> i) & 1u) {
        arg += h[i];
        ++weight;
      }
    }
    Complex v = family[c][static_cast<std::size_t>(arg % m)];
    if (weight % 2) v = std::conj(v);
    prod *= v;
  }
  return prod;
}

void gowers_loop(const std::vector<std::vector<Complex>>& family, int d, std::int64_t x, std::vector<std::int64_t>& h,
                 int level, Complex& acc) {
  const auto m = static_cast<std::int64_t>(family[0].size());
  if (level == d) {
    acc += family_term(family, d, x, h);
    return;
  }
  for (std::int64_t v = 0; v < m; ++v) {
    h[level] = v;
    gowers_loop(family, d, x, h, level + 1, acc);
  }
}

}  // namespace

Complex gowers_inner(const std::vector<std::vector<Complex>>& family, int d) {
  const auto m = static_cast<std::int64_t>(family[0].size());
  Complex total = 0.0;
  std::vector<std::int64_t> h(static_cast<std::size_t>(d));
  for (std::int64_t x = 0; x < m; ++x) {
    Complex acc = 0.0;
    gowers_loop(family, d, x, h, 0, acc);
    total += acc;
  }
  return total / std::pow(static_cast<double>(m), d + 1);
}

Complex eval_direct(std::span<const Complex> coeffs, std::int64_t lo, double theta) {
  const long double t = theta;
  std::complex<long double> s = 0.0L;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const long double n = static_cast<long double>(lo + static_cast<std::int64_t>(i));
    long double ph = n * t;
    ph -= std::floor(ph);
    const long double a = 2.0L * std::numbers::pi_v<long double> * ph;
    s += std::complex<long double>(coeffs[i].real(), coeffs[i].imag()) *
         std::complex<long double>(std::cos(a), std::sin(a));
  }
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

double grid_sup(std::span<const Complex> coeffs, std::int64_t lo, std::int64_t size) {
  double best = 0.0;
  for (std::int64_t k = 0; k < size; ++k) {
    best = std::max(best, std::abs(eval_direct(coeffs, lo,
                                               static_cast<double>(k) / static_cast<double>(size))));
  }
  return best;
}

double dense_grid_sup(std::span<const Complex> coeffs, std::int64_t /*lo*/, int log_size) {
  // |P| is invariant under shifting frequencies, so place c at 0..len-1
  const std::size_t size = std::size_t{1} << log_size;
  if (coeffs.size() > size) throw std::invalid_argument("dense_grid_sup: grid smaller than the support");
  std::vector<Complex> a(size);
  std::copy(coeffs.begin(), coeffs.end(), a.begin());
  // iterative radix-2, positive exponent
  for (std::size_t i = 1, j = 0; i < size; ++i) {
    std::size_t bit = size >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= size; len <<= 1) {
    const std::size_t half = len / 2;
    std::vector<Complex> tw(half);
    for (std::size_t k = 0; k < half; ++k) {
      const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len);
      tw[k] = {std::cos(ang), std::sin(ang)};
    }
    for (std::size_t i = 0; i < size; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + half] * tw[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
  double best = 0.0;
  for (const auto& v : a) best = std::max(best, std::abs(v));
  return best;
}

double geometric_mean_modulus(double alpha, std::int64_t len) {
  const double s = std::sin(std::numbers::pi * alpha);
  if (s == 0.0) return 1.0;
  return std::abs(std::sin(std::numbers::pi * alpha * static_cast<double>(len)) / s) / static_cast<double>(len);
}

std::uint64_t bit_window(const std::vector<int>& bits, std::size_t m) {
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < 64; ++i) x = (x << 1) | static_cast<std::uint64_t>(bits.at(m + i));
  return x;
}

double variation_exhaustive(std::span<const Complex> a, double s) {
  const std::size_t n = a.size();
  if (n > 20) throw std::invalid_argument("variation_exhaustive: length above 20");
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    double sum = 0.0;
    int prev = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1u)) continue;
      if (prev >= 0) sum += std::pow(std::abs(a[i] - a[static_cast<std::size_t>(prev)]), s);
      prev = static_cast<int>(i);
    }
    best = std::max(best, sum);
  }
  return std::pow(best, 1.0 / s);
}

std::vector<double> maximal_brute(std::span<const Complex> nu_from_1, std::span<const Complex> phi,
                                  std::span<const Complex> psi, std::span<const std::int64_t> times, std::int64_t a,
                                  std::int64_t b) {
  const auto size = static_cast<std::int64_t>(phi.size());
  auto read = [&](std::span<const Complex> v, std::int64_t i) { return (i >= 0 && i < size) ? v[i] : Complex{}; };
  std::vector<double> out(phi.size(), 0.0);
  for (std::int64_t j = 0; j < size; ++j) {
    for (const std::int64_t n_top : times) {
      Complex s = 0.0;
      for (std::int64_t n = 1; n <= n_top; ++n) s += nu_from_1[n - 1] * read(phi, j + a * n) * read(psi, j + b * n);
      out[j] = std::max(out[j], std::abs(s) / static_cast<double>(n_top));
    }
  }
  return out;
}

}  // namespace ergolab::oracle
