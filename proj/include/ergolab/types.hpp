#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace ergolab {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Fractional part of t, in [0, 1).
inline double frac(double t) {
  double r = t - std::floor(t);
  return r >= 1.0 ? 0.0 : r;
}

/// frac(n * t) with the rounding error of the product folded back in.
inline double frac_product(std::int64_t n, double t) {
  const double nd = static_cast<double>(n);
  const double p = nd * t;
  const double e = std::fma(nd, t, -p);
  const double fp = p - std::floor(p);
  return frac(fp + e);
}

/// e^{2 pi i t}. Quarter turns are reproduced exactly.
inline Complex cis_turns(double t) {
  double r = frac(t);
  const double q = std::nearbyint(4.0 * r);
  const double rem = r - 0.25 * q;
  const double c = std::cos(kTwoPi * rem);
  const double s = std::sin(kTwoPi * rem);
  switch (static_cast<int>(q) & 3) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

/// frac(n * t) shifted into [-1/2, 1/2); keeps relative accuracy near 0.
inline double centred_frac_product(std::int64_t n, double t) {
  const double nd = static_cast<double>(n);
  const double p = nd * t;
  const double e = std::fma(nd, t, -p);
  double r = (p - std::nearbyint(p)) + e;
  if (r >= 0.5) r -= 1.0;
  if (r < -0.5) r += 1.0;
  return r;
}

/// sin(pi t); the reduction to [-1/2, 1/2] is exact.
inline double sin_pi(double t) {
  double r = t - 2.0 * std::nearbyint(0.5 * t);  // [-1, 1]
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return std::sin(std::numbers::pi * r);
}

/// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(Complex v) {
    add_part(re_, re_c_, v.real());
    add_part(im_, im_c_, v.imag());
  }
  Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

}  // namespace ergolab
