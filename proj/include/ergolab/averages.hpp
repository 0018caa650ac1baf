#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ergolab/arith_seq.hpp"
#include "ergolab/dynamics.hpp"
#include "ergolab/report.hpp"
#include "ergolab/spectra.hpp"

namespace ergolab {

/// {floor(rho^n) : n >= 0} intersected with [n0, nbar], sorted and deduplicated.
struct TimeScale {
  double rho = 2.0;
  std::int64_t n0 = 1;
  std::int64_t nbar = std::numeric_limits<std::int64_t>::max();  // unbounded marker

  std::vector<std::int64_t> times() const;
};

/// (1/N) sum_{n=1}^N nu(n) F(n) G(n), compensated, in index order. F and G
/// are indexed from 0 and must have equal sizes greater than N.
Complex weighted_bilinear(const WeightSequence& nu, std::span<const Complex> f, std::span<const Complex> g,
                          std::int64_t n);

/// |A_N| at every N in `times` in one pass (running compensated sum).
std::vector<double> bilinear_running(const WeightSequence& nu, std::span<const Complex> f,
                                     std::span<const Complex> g, std::span<const std::int64_t> times);

/// Rows (x_index, N, abs_value). Summary: per-N median and max over x, and the
/// least-squares slope of log(median) against log N.
ExperimentReport decay_profile(const WeightSequence& nu, const DynSystem& system, std::span<const Point> x0_list,
                               const Observable& f, const Observable& g, std::int64_t a, std::int64_t b,
                               const TimeScale& scale);

struct MaximalReport {
  std::vector<std::int64_t> times;
  std::vector<double> values;  // m(j), j = 0..J
  /// sup over lambda of lambda |{m > lambda}|, the weak-type statistic.
  double weak_type = 0.0;
  double phi_l2 = 0.0;
  double psi_l2 = 0.0;
  /// weak_type / (||phi||_2 ||psi||_2), 0 when the norms vanish.
  double empirical_constant = 0.0;
};

/// m(j) = max_{N in scale} |(1/N) sum_{n<=N} nu(n) phi(j + a n) psi(j + b n)|,
/// with reads outside [0, J] returning 0.
MaximalReport maximal_function(const WeightSequence& nu, std::span<const Complex> phi, std::span<const Complex> psi,
                               const TimeScale& scale, std::int64_t a, std::int64_t b);

bool is_prime(std::int64_t n);

/// sup_t |(1/N) sum_{n=1}^N e(n (p - q) t) f(T^{pn}x) f(T^{qn}x)| from an orbit
/// orbit_f[l] = f(T^l x). With `conjugate` the second factor is conjugated.
SupEstimate wwdkbsz_statistic(std::span<const Complex> orbit_f, std::int64_t p, std::int64_t q, std::int64_t n,
                              int t_grid = kDefaultOversample, bool conjugate = false);

/// The orthogonality criterion read as an implication on finite data: if the
/// wwdkbsz statistic (plus grid error) is below eps for every pair of primes
/// p < q <= min(e^{1/eps}, prime_cap), then sup_t |(1/N) sum nu(n) f(T^n x) e(n t)|
/// should be below 2 sqrt(eps log(1/eps)). Rows (p, q, value, error); summary
/// premise, lhs, rhs, holds (vacuous when the premise fails) and
/// prime_range_complete (false when prime_cap cut the range).
ExperimentReport wwkbsz_criterion_check(const WeightSequence& nu, std::span<const Complex> orbit_f, double eps,
                                        std::int64_t n, std::int64_t prime_cap, bool conjugate = true);

/// sup_{|z|=1} |(1/N) sum_{n=1}^N z^n f(T^{an}x) g(T^{bn}x)|. The orbits hold
/// f(T^l x) at position origin + l.
SupEstimate ww_uniform_average(std::span<const Complex> orbit_f, std::span<const Complex> orbit_g, std::int64_t a,
                               std::int64_t b, std::int64_t n, int z_grid = kDefaultOversample,
                               std::int64_t origin = 0);

/// For each dyadic delta: N0 = the smallest power of two above 1/delta, the
/// maximal function over dyadic N in [N0, n1], its mean over j, the threshold
/// delta^{1e-9}, the fraction of j above the threshold and that fraction over
/// delta^{1e-6}. Reported only.
ExperimentReport borel_cantelli_summary(const WeightSequence& nu, std::span<const Complex> phi,
                                        std::span<const Complex> psi, std::int64_t a, std::int64_t b,
                                        std::span<const double> deltas, std::int64_t n1);

/// Termwise bound |A_N(f,g) - A_N(f1,g1)| <= avg|f-f1||g| + avg|f1||g-g1| + avg|f-f1||g-g1|.
/// Summary: lhs, rhs, holds.
ExperimentReport decomposition_bound_check(const WeightSequence& nu, std::span<const Complex> f,
                                           std::span<const Complex> g, std::span<const Complex> f1,
                                           std::span<const Complex> g1, std::int64_t n);

}  // namespace ergolab
