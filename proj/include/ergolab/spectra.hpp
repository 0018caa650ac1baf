#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ergolab/arith_seq.hpp"
#include "ergolab/report.hpp"
#include "ergolab/types.hpp"

namespace ergolab {

/// Trigonometric polynomial sum_{n=lo}^{hi} c_n e^{2 pi i n theta}.
///
/// The support is the integer interval [lo, hi] of the stored coefficient
/// vector; a default-constructed polynomial has empty support.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  TrigPolynomial(std::int64_t lo, std::vector<Complex> coeffs);

  static TrigPolynomial monomial(std::int64_t n, Complex c = 1.0);

  bool empty() const { return coeffs_.empty(); }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(coeffs_.size()) - 1; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const Complex> coeffs() const { return coeffs_; }

  /// Coefficient at frequency n; zero outside the support.
  Complex coeff(std::int64_t n) const;

  /// max(|lo|, |hi|); 0 for empty support.
  std::int64_t degree() const;

  /// Half-width (hi - lo)/2 of the support, the degree after centring.
  double centred_degree() const;

  Complex operator()(double theta) const { return eval(theta); }
  Complex eval(double theta) const;

  /// L2 norm on the torus, from coefficients (Parseval).
  double l2_norm() const;

  /// Sum of |c_n|, the Wiener-algebra norm.
  double wiener_norm() const;

  bool is_zero() const;

  /// d/dtheta: coefficients 2 pi i n c_n.
  TrigPolynomial derivative() const;

  /// Coefficients c_{-n}: P(-theta).
  TrigPolynomial reflected() const;

  /// Restriction of the coefficients to [a, b] (intersected with the support).
  TrigPolynomial restricted(std::int64_t a, std::int64_t b) const;

  /// Frequencies shifted by s: e^{2 pi i s theta} P(theta).
  TrigPolynomial modulated(std::int64_t s) const;

 private:
  std::int64_t lo_ = 0;
  std::vector<Complex> coeffs_;
};

/// Coefficient-wise difference P - Q over the union of supports.
TrigPolynomial operator-(const TrigPolynomial& p, const TrigPolynomial& q);

/// ||P - Q||_2 from coefficients.
double l2_distance(const TrigPolynomial& p, const TrigPolynomial& q);

/// Certified estimate of sup_theta |P(theta)|: the true value lies in
/// [value, value + error_bound].
struct SupEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  double argmax_theta = 0.0;
};

inline constexpr int kDefaultOversample = 8;

/// Largest grid size accepted by sup_norm.
inline constexpr std::int64_t kMaxSupGrid = std::int64_t{1} << 25;

/// Grid maximum of |P| on G uniform points plus a Bernstein error bound.
///
/// G is the smallest power of two >= oversample * (2 w + 1), where
/// w = hi - lo is the degree once the support is shifted to start at 0.
/// Every theta is within h/2 = 1/(2G) of the grid and, with d = w/2 the
/// centred degree, |P'| <= 2 pi d sup|P| (Bernstein), so
/// sup|P| <= value / (1 - pi h d). The returned error is the smallest of that
/// bound, pi h d sum|c_n| and sum|c_n| - value. Requires oversample >= 4;
/// DegenerateError on empty support, CapacityError if G exceeds kMaxSupGrid.
SupEstimate sup_norm(const TrigPolynomial& p, int oversample = kDefaultOversample);

/// Number of grid points sup_norm uses for p.
std::int64_t sup_grid_size(const TrigPolynomial& p, int oversample);

/// P_{x,N}(theta) = (1/N) sum_{n=x-N}^{x-1} psi(n) e^{2 pi i n theta}.
TrigPolynomial local_poly(const WeightSequence& psi, std::int64_t x, std::int64_t n);

/// Q_{x,N}(theta) = (1/N) sum_{x-N<=n<x} nu(n+x) psi(n) e^{-2 pi i n theta},
/// stored with support [-(x-1), -(x-N)].
TrigPolynomial weighted_local_poly(const WeightSequence& nu, const WeightSequence& psi,
                                   std::int64_t x, std::int64_t n);

/// Checks sum|c| <= (pi/sqrt 3) sqrt(||P||_2) sqrt(||P'||_2) for mean-zero P.
/// Summary: lhs, rhs, holds. PreconditionError if c_0 != 0.
ExperimentReport bw_inequality_report(const TrigPolynomial& p);

/// g = F^{-1}(P F(phi)), i.e. g(k) = sum_n c_n phi(k - n), against
/// ||g||_inf <= ||P||_A ||phi||_inf. `phi` holds phi(phi_first + i).
ExperimentReport convolution_bound_check(const TrigPolynomial& p, std::span<const Complex> phi,
                                         std::int64_t phi_first = 0);

/// For each N: sup_theta |sum_{n<=N} w(n) e^{2 pi i n^k theta}| / N with
/// certified error. Rows: N, value, error_bound, argmax_theta. Summary
/// holds the log-log slope of value against N when there are >= 2 rows.
ExperimentReport power_sum_profile(const WeightSequence& w, int k, std::span<const std::int64_t> n_list,
                                   int oversample = kDefaultOversample);

/// sup_theta |sum_{N<=n<N+M} w(n) e^{2 pi i n theta}| / M (M terms).
ExperimentReport short_interval_profile(const WeightSequence& w, std::int64_t n, std::int64_t m,
                                        int oversample = kDefaultOversample);

}  // namespace ergolab
