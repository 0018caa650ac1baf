#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ergolab/report.hpp"
#include "ergolab/types.hpp"

namespace ergolab {

/// Complex function on Z/M; indices are reduced modulo M.
class CyclicSequence {
 public:
  CyclicSequence() = default;
  explicit CyclicSequence(std::vector<Complex> values);

  std::int64_t modulus() const { return static_cast<std::int64_t>(values_.size()); }
  Complex operator()(std::int64_t x) const;
  std::span<const Complex> values() const { return values_; }

 private:
  std::vector<Complex> values_;
};

struct GowersResult {
  int d = 0;
  double norm = 0.0;
  double raw_power = 0.0;  // norm^{2^d} before the root (may be -0 after rounding)
  std::string method;
  /// Second computation of raw_power by an independent route (NaN if none).
  double cross_check = std::numeric_limits<double>::quiet_NaN();
};

/// Normalized average over (x, h) in (Z/M)^{d+1} of prod_c C^{|c|} f_c(x + c.h).
/// family[c] is indexed by the bit pattern of the cube vertex c.
Complex gowers_inner(std::span<const CyclicSequence> family, int d);

/// ||f||_{U^d(Z/M)}. d = 2 uses the Fourier identity sum |f^(xi)|^4 with
/// f^(xi) = (1/M) sum_x f(x) e(-x xi / M); d >= 3 recurses through
/// E_h ||d_h f||_{U^{d-1}}^{2^{d-1}}.
GowersResult gowers_norm_cyclic(const CyclicSequence& f, int d);

/// ||f||_{U^d[N]}: f on [1, N] zero-padded into Z/(2^d N), divided by the
/// same norm of the indicator of [1, N]. `f[i]` is the value at n = i + 1.
GowersResult gowers_norm_interval(std::span<const Complex> f, int d);

/// d_h f(x) = f(x + h) conj(f(x)).
CyclicSequence discrete_derivative(const CyclicSequence& f, std::int64_t h);

/// Compares ||e(phi) f||_{U^d} with ||f||_{U^d} for phi(x) = sum_k a_k x^k / M,
/// evaluated modulo 1 exactly. Summary: norm_f, norm_modulated, difference.
ExperimentReport phase_invariance_check(const CyclicSequence& f, std::span<const std::int64_t> phi_numerators,
                                        int d);

/// sup over theta of |(1/N) sum f(n) e(n theta)| (certified grid) against
/// ||f||_{U^2[N]}. Summary: lhs, lhs_error, rhs, holds (lhs <= rhs + error).
ExperimentReport linear_phase_sup_bound(std::span<const Complex> f, int oversample = 8);

/// |<(f_c)>| against prod_c ||f_c||_{U^d}. Summary: lhs, rhs, holds.
ExperimentReport cbs_gowers_check(std::span<const CyclicSequence> family, int d);

struct GhkResult {
  double value = 0.0;
  double raw = 0.0;
  bool clamped = false;  // raw was negative through truncation
};

/// Truncated Gowers-Host-Kra seminorm from an orbit f(T^l x), l in [0, L):
/// |||f|||_1^2 = |avg f|^2 and |||f|||_{k+1}^{2^{k+1}} = avg_{h<H} |||f . T^h conj(f)|||_k^{2^k}.
/// All orbit averages use the common window [0, L - (k-1)H).
GhkResult ghk_seminorm_empirical(std::span<const Complex> orbit, int k, std::int64_t h);

}  // namespace ergolab
