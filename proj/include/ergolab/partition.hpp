#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ergolab/report.hpp"
#include "ergolab/spectra.hpp"

namespace ergolab {

/// theta(delta, t): C^2 smoothstep from 0 at t <= delta to 1 at t >= 2 delta.
double theta_ramp(double delta, double t);

/// sigma_delta(t) = theta(delta, t) - theta(2 delta, t). PreconditionError for
/// a non-dyadic delta or t outside (0, 1].
double sigma_delta(double delta, double t);

/// Circular distance on [0, 1).
double torus_distance(double a, double b);

/// Finite set of distinct torus points kept sorted in [0, 1).
class FrequencySet {
 public:
  FrequencySet() = default;
  /// Points are reduced mod 1; DegenerateError on duplicates.
  explicit FrequencySet(std::vector<double> points);

  std::span<const double> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  /// Minimum circular distance between distinct points (0 for fewer than 2).
  double min_gap() const { return min_gap_; }

  /// Disjoint arcs [a, b] inside [0, 1] whose union is the open eps-neighbourhood.
  std::vector<std::pair<double, double>> neighborhood_arcs(double eps) const;

  /// True if t lies within distance < eps of a point.
  bool within(double t, double eps) const;

 private:
  std::vector<double> points_;
  double min_gap_ = 0.0;
};

/// Exact measure of the merged arcs; PreconditionError unless 0 < eps < 1/2.
double neighborhood_measure(const FrequencySet& e, double eps);

/// k/(J+1) for k = 0..J.
FrequencySet mz_nodes(std::int64_t j);

struct LargeValueSet {
  FrequencySet points;
  std::int64_t j = 0;
  double delta = 0.0;
  double separation = 0.0;    // required: 1/J
  bool separated = false;     // min_gap >= 1/J
  double normalized_size = 0.0;  // |E0| delta^2
  bool contained = false;     // dense super-level set inside E0(1/J)
  std::int64_t dense_grid = 0;
};

/// Greedy E0 for P0(l) = sum_{n=1}^J psi(n) e(n l). Candidates are the nodes
/// k/(J+1) and the 64J-point grid; those with |P0| > delta J are taken in
/// decreasing |P0| (ties to the smaller point) and kept when at distance
/// >= 1/J from all kept points. psi[i] holds psi(i + 1).
LargeValueSet large_value_set(std::span<const Complex> psi, double delta);

/// Integral of |P|^2 over a union of disjoint arcs, from the autocorrelation of
/// the coefficients and closed-form arc integrals of e(k theta).
double arc_l2_squared(const TrigPolynomial& p, std::span<const std::pair<double, double>> arcs);

/// Rounding allowance used when deciding whether lhs exceeds rhs_main.
double arc_integral_rounding(const TrigPolynomial& p, std::size_t arc_count);

/// LP inequality. With `epsilon` set, the localized form: lhs over E(R/|I|)
/// and every cell shorter than epsilon |I|. Summary: lhs, rhs_main, excess,
/// budget, C_hat. ShapeError if the cells do not partition the support.
ExperimentReport lp_lemma_check(const TrigPolynomial& p, std::span<const std::pair<std::int64_t, std::int64_t>> cells,
                                const FrequencySet& e, double r, double d,
                                std::optional<double> epsilon = std::nullopt);

/// ||sup_{s<j<=j_max} |int_{V_j} e(n a) f(a) da| ||_{l^2(n)} against
/// (log K)^2 ||f||_2 with V_j the 2^{-j} neighbourhood of E. The l^2 sum runs
/// over n with |n + m| <= 2^{j_max + 4} for some frequency m of f.
ExperimentReport lambda_separated_check(const FrequencySet& e, const TrigPolynomial& f, int s, int j_max);

struct EntropyResult {
  std::size_t count = 0;        // greedy covering number (upper bound)
  std::size_t lower_bound = 0;  // points pairwise > 2t apart
};

/// Covering radii of farthest-point traversal: r[m] is the largest distance
/// from A to the first m centres (r[0] = infinity). With `origin_seed` the
/// first centre is the origin and is not counted in the returned order.
std::vector<double> farthest_point_radii(const std::vector<std::vector<Complex>>& points, bool origin_seed = false);

/// N(A, t) by farthest-point traversal: the least m whose m-centre radius is <= t.
EntropyResult entropy_numbers(const std::vector<std::vector<Complex>>& points, double t);

/// Gamma_x = {((1/N) sum_{u=0}^{N} f(x+u) e(u l_k))_k : N dyadic in (1/tau, N_max]}
/// for f on [0, L). Rows per x of N(Gamma_x u {0}, t) - 1; summary holds the
/// sum over x and C_hat = t^2 sum / ||f||_2^2.
ExperimentReport entropy_gamma_check(std::span<const Complex> f, const FrequencySet& lambdas, double tau,
                                     std::int64_t n_max, double t);

struct VariationResult {
  double value = 0.0;
  bool exact = true;
};

inline constexpr std::size_t kVariationExactCap = std::size_t{1} << 14;

/// v_s norm by dynamic programming over chains (exact up to kVariationExactCap
/// terms); longer inputs give the full-sequence lower bound, exact = false.
VariationResult variation_norm(std::span<const Complex> a, double s);

}  // namespace ergolab
