#include "ergolab/spectra.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numbers>

#include "ergolab/error.hpp"
#include "ergolab/fft.hpp"
#include "ergolab/stats.hpp"

namespace ergolab {

TrigPolynomial::TrigPolynomial(std::int64_t lo, std::vector<Complex> coeffs)
    : lo_(lo), coeffs_(std::move(coeffs)) {}

TrigPolynomial TrigPolynomial::monomial(std::int64_t n, Complex c) { return TrigPolynomial(n, {c}); }

Complex TrigPolynomial::coeff(std::int64_t n) const {
  if (empty() || n < lo_ || n > hi()) return 0.0;
  return coeffs_[static_cast<std::size_t>(n - lo_)];
}

std::int64_t TrigPolynomial::degree() const {
  if (empty()) return 0;
  return std::max(std::abs(lo_), std::abs(hi()));
}

double TrigPolynomial::centred_degree() const {
  if (empty()) return 0.0;
  return 0.5 * static_cast<double>(hi() - lo_);
}

Complex TrigPolynomial::eval(double theta) const {
  // Direct sum; the twiddle is re-anchored every 64 terms to bound drift.
  constexpr std::size_t kBlock = 64;
  const Complex step = cis_turns(theta);
  CompensatedSum sum;
  for (std::size_t start = 0; start < coeffs_.size(); start += kBlock) {
    Complex z = cis_turns(frac_product(lo_ + static_cast<std::int64_t>(start), theta));
    const std::size_t stop = std::min(coeffs_.size(), start + kBlock);
    for (std::size_t i = start; i < stop; ++i) {
      sum.add(coeffs_[i] * z);
      z *= step;
    }
  }
  return sum.value();
}

double TrigPolynomial::l2_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

double TrigPolynomial::wiener_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

bool TrigPolynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex{}; });
}

TrigPolynomial TrigPolynomial::derivative() const {
  std::vector<Complex> d(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const double n = static_cast<double>(lo_ + static_cast<std::int64_t>(i));
    d[i] = Complex(0.0, kTwoPi * n) * coeffs_[i];
  }
  return TrigPolynomial(lo_, std::move(d));
}

TrigPolynomial TrigPolynomial::reflected() const {
  if (empty()) return {};
  std::vector<Complex> r(coeffs_.rbegin(), coeffs_.rend());
  return TrigPolynomial(-hi(), std::move(r));
}

TrigPolynomial TrigPolynomial::restricted(std::int64_t a, std::int64_t b) const {
  if (empty()) return {};
  const std::int64_t lo = std::max(a, lo_);
  const std::int64_t hi_r = std::min(b, hi());
  if (lo > hi_r) return {};
  std::vector<Complex> c(coeffs_.begin() + (lo - lo_), coeffs_.begin() + (hi_r - lo_ + 1));
  return TrigPolynomial(lo, std::move(c));
}

TrigPolynomial TrigPolynomial::modulated(std::int64_t s) const { return TrigPolynomial(lo_ + s, coeffs_); }

TrigPolynomial operator-(const TrigPolynomial& p, const TrigPolynomial& q) {
  if (p.empty() && q.empty()) return {};
  std::int64_t lo, hi;
  if (p.empty()) {
    lo = q.lo();
    hi = q.hi();
  } else if (q.empty()) {
    lo = p.lo();
    hi = p.hi();
  } else {
    lo = std::min(p.lo(), q.lo());
    hi = std::max(p.hi(), q.hi());
  }
  std::vector<Complex> c(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = lo; n <= hi; ++n) c[n - lo] = p.coeff(n) - q.coeff(n);
  return TrigPolynomial(lo, std::move(c));
}

double l2_distance(const TrigPolynomial& p, const TrigPolynomial& q) { return (p - q).l2_norm(); }

std::int64_t sup_grid_size(const TrigPolynomial& p, int oversample) {
  if (oversample < 4) throw PreconditionError("sup_norm: oversample must be >= 4");
  if (p.empty()) throw DegenerateError("sup_norm: polynomial has empty support");
  const auto width = static_cast<std::uint64_t>(p.hi() - p.lo());
  if (width > static_cast<std::uint64_t>(kMaxSupGrid)) {
    throw CapacityError("sup_norm: support width exceeds the grid cap");
  }
  const std::uint64_t target = static_cast<std::uint64_t>(oversample) * (2 * width + 1);
  const std::uint64_t g = std::bit_ceil(target);
  if (g > static_cast<std::uint64_t>(kMaxSupGrid)) {
    throw CapacityError("sup_norm: grid of " + std::to_string(g) + " points exceeds the cap 2^25");
  }
  return static_cast<std::int64_t>(g);
}

SupEstimate sup_norm(const TrigPolynomial& p, int oversample) {
  const std::int64_t g = sup_grid_size(p, oversample);
  std::vector<Complex> buf(static_cast<std::size_t>(g));
  // Frequencies are shifted by -lo; |P| is unchanged.
  const auto c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) buf[i % buf.size()] += c[i];
  dft_positive(buf);
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t k = 0; k < buf.size(); ++k) {
    const double v = std::abs(buf[k]);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  const double h = 1.0 / static_cast<double>(g);
  const double d = p.centred_degree();
  const double t = std::numbers::pi * h * d;  // <= pi / (4 oversample)
  const double self_bound = t < 1.0 ? best_value * t / (1.0 - t) : std::numeric_limits<double>::infinity();
  const double coeff_bound = t * p.wiener_norm();
  SupEstimate out;
  out.value = best_value;
  // sup|P| <= sum|c_n| caps the upper end as well
  const double wiener_gap = std::max(0.0, p.wiener_norm() - best_value);
  out.error_bound = std::min({self_bound, coeff_bound, wiener_gap});
  out.argmax_theta = static_cast<double>(best) * h;
  return out;
}

TrigPolynomial local_poly(const WeightSequence& psi, std::int64_t x, std::int64_t n) {
  if (n < 1) throw PreconditionError("local_poly: N must be >= 1");
  if (!psi.contains(x - n) || !psi.contains(x - 1)) {
    throw RangeError("local_poly: [x-N, x-1] = [" + std::to_string(x - n) + ", " + std::to_string(x - 1) +
                     "] outside the stored sequence");
  }
  std::vector<Complex> c(static_cast<std::size_t>(n));
  const double inv = 1.0 / static_cast<double>(n);
  for (std::int64_t k = 0; k < n; ++k) c[k] = psi[x - n + k] * inv;
  return TrigPolynomial(x - n, std::move(c));
}

TrigPolynomial weighted_local_poly(const WeightSequence& nu, const WeightSequence& psi, std::int64_t x,
                                   std::int64_t n) {
  if (n < 1) throw PreconditionError("weighted_local_poly: N must be >= 1");
  if (!psi.contains(x - n) || !psi.contains(x - 1)) {
    throw RangeError("weighted_local_poly: psi undefined on [x-N, x-1]");
  }
  if (!nu.contains(2 * x - n) || !nu.contains(2 * x - 1)) {
    throw RangeError("weighted_local_poly: nu_x(n) = nu(n+x) undefined on [2x-N, 2x-1]");
  }
  // frequency -m for m = x-1 down to x-N
  std::vector<Complex> c(static_cast<std::size_t>(n));
  const double inv = 1.0 / static_cast<double>(n);
  for (std::int64_t k = 0; k < n; ++k) {
    const std::int64_t m = x - 1 - k;
    c[k] = nu[m + x] * psi[m] * inv;
  }
  return TrigPolynomial(-(x - 1), std::move(c));
}

ExperimentReport bw_inequality_report(const TrigPolynomial& p) {
  if (p.coeff(0) != Complex{}) throw PreconditionError("bw_inequality_report: P must have zero mean");
  const double lhs = p.wiener_norm();
  const double rhs = std::numbers::pi / std::sqrt(3.0) * std::sqrt(p.l2_norm()) *
                     std::sqrt(p.derivative().l2_norm());
  ExperimentReport r("bw_inequality", {"lhs", "rhs"});
  r.add_row({lhs, rhs});
  r.summary["lhs"] = lhs;
  r.summary["rhs"] = rhs;
  r.summary["holds"] = lhs <= rhs;
  return r;
}

ExperimentReport convolution_bound_check(const TrigPolynomial& p, std::span<const Complex> phi,
                                         std::int64_t phi_first) {
  double sup_phi = 0.0;
  for (const auto& v : phi) sup_phi = std::max(sup_phi, std::abs(v));
  double sup_g = 0.0;
  if (!p.empty() && !phi.empty()) {
    const auto c = p.coeffs();
    const std::size_t len = c.size() + phi.size() - 1;
    for (std::size_t k = 0; k < len; ++k) {
      CompensatedSum g;
      const std::size_t i_lo = k >= phi.size() ? k - phi.size() + 1 : 0;
      const std::size_t i_hi = std::min(k, c.size() - 1);
      for (std::size_t i = i_lo; i <= i_hi; ++i) g.add(c[i] * phi[k - i]);
      sup_g = std::max(sup_g, std::abs(g.value()));
    }
  }
  const double rhs = p.wiener_norm() * sup_phi;
  ExperimentReport r("convolution_bound", {"sup_g", "rhs"});
  r.header["phi_first"] = phi_first;
  r.add_row({sup_g, rhs});
  r.summary["lhs"] = sup_g;
  r.summary["rhs"] = rhs;
  r.summary["holds"] = sup_g <= rhs * (1.0 + 1e-12);
  return r;
}

namespace {

std::int64_t checked_power(std::int64_t n, int k) {
  __int128 v = 1;
  for (int i = 0; i < k; ++i) {
    v *= n;
    if (v > std::numeric_limits<std::int64_t>::max()) {
      throw CapacityError("power_sum_profile: n^k overflows a signed 64-bit frequency");
    }
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

ExperimentReport power_sum_profile(const WeightSequence& w, int k, std::span<const std::int64_t> n_list,
                                   int oversample) {
  if (k < 1) throw PreconditionError("power_sum_profile: k must be >= 1");
  std::vector<std::int64_t> ns(n_list.begin(), n_list.end());
  std::sort(ns.begin(), ns.end());
  ExperimentReport r("power_sum_profile", {"N", "value", "error_bound", "argmax_theta"});
  r.header["kind"] = to_string(w.kind());
  r.header["k"] = k;
  r.header["oversample"] = oversample;
  for (const std::int64_t n : ns) {
    if (n < 1) throw PreconditionError("power_sum_profile: N must be >= 1");
    if (!w.contains(1) || !w.contains(n)) throw RangeError("power_sum_profile: w undefined on [1, N]");
    const std::int64_t top = checked_power(n, k);
    if (top - 1 > kMaxSupGrid) throw CapacityError("power_sum_profile: N^k exceeds the grid cap");
    std::vector<Complex> c(static_cast<std::size_t>(top));
    for (std::int64_t m = 1; m <= n; ++m) c[checked_power(m, k) - 1] += w[m];
    const TrigPolynomial p(1, std::move(c));
    const SupEstimate s = sup_norm(p, oversample);
    const double nd = static_cast<double>(n);
    r.add_row({nd, s.value / nd, s.error_bound / nd, s.argmax_theta});
  }
  if (r.rows.size() >= 2) {
    const auto x = r.column("N");
    const auto y = r.column("value");
    if (std::all_of(y.begin(), y.end(), [](double v) { return v > 0.0; })) {
      r.summary["log_log_slope"] = log_log_slope(x, y);
    }
  }
  return r;
}

ExperimentReport short_interval_profile(const WeightSequence& w, std::int64_t n, std::int64_t m,
                                        int oversample) {
  if (n < 1 || m < 1) throw PreconditionError("short_interval_profile: need N >= 1 and M >= 1");
  if (!w.contains(n) || !w.contains(n + m - 1)) {
    throw RangeError("short_interval_profile: w undefined on [N, N+M)");
  }
  std::vector<Complex> c(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) c[i] = w[n + i];
  const SupEstimate s = sup_norm(TrigPolynomial(n, std::move(c)), oversample);
  const double md = static_cast<double>(m);
  ExperimentReport r("short_interval_profile", {"N", "M", "value", "error_bound", "argmax_theta"});
  r.header["kind"] = to_string(w.kind());
  r.add_row({static_cast<double>(n), md, s.value / md, s.error_bound / md, s.argmax_theta});
  return r;
}

}  // namespace ergolab
