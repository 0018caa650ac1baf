#include "ergolab/averages.hpp"

#include <algorithm>
#include <cmath>

#include "ergolab/error.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/stats.hpp"

namespace ergolab {

std::vector<std::int64_t> TimeScale::times() const {
  if (!(rho > 1.0) || !std::isfinite(rho)) throw PreconditionError("TimeScale: rho must be > 1");
  if (n0 < 1 || nbar < n0) throw PreconditionError("TimeScale: need 1 <= N0 <= Nbar");
  std::vector<std::int64_t> out;
  // 2^62 keeps floor(rho^k) representable
  for (int k = 0;; ++k) {
    const double v = std::floor(std::pow(rho, k));
    if (v > 0x1.0p62 || v > static_cast<double>(nbar)) break;
    const auto t = static_cast<std::int64_t>(v);
    if (t >= n0 && (out.empty() || out.back() != t)) out.push_back(t);
  }
  return out;
}

namespace {

void check_nu(const WeightSequence& nu, std::int64_t n, const char* where) {
  if (n >= 1 && (!nu.contains(1) || !nu.contains(n))) {
    throw RangeError(std::string(where) + ": weight undefined on [1, " + std::to_string(n) + "]");
  }
}

}  // namespace

Complex weighted_bilinear(const WeightSequence& nu, std::span<const Complex> f, std::span<const Complex> g,
                          std::int64_t n) {
  if (n < 1) throw PreconditionError("weighted_bilinear: N must be >= 1");
  if (f.size() != g.size()) {
    throw ShapeError("weighted_bilinear: F has " + std::to_string(f.size()) + " samples, G has " +
                     std::to_string(g.size()));
  }
  if (static_cast<std::int64_t>(f.size()) <= n) {
    throw ShapeError("weighted_bilinear: samples cover n < " + std::to_string(f.size()) + ", need n = " +
                     std::to_string(n));
  }
  check_nu(nu, n, "weighted_bilinear");
  CompensatedSum s;
  for (std::int64_t k = 1; k <= n; ++k) s.add(nu[k] * f[k] * g[k]);
  return s.value() / static_cast<double>(n);
}

std::vector<double> bilinear_running(const WeightSequence& nu, std::span<const Complex> f,
                                     std::span<const Complex> g, std::span<const std::int64_t> times) {
  if (f.size() != g.size()) throw ShapeError("bilinear_running: F and G sizes differ");
  if (times.empty()) return {};
  const std::int64_t top = *std::max_element(times.begin(), times.end());
  if (static_cast<std::int64_t>(f.size()) <= top) throw ShapeError("bilinear_running: samples too short");
  check_nu(nu, top, "bilinear_running");
  std::vector<double> out(times.size());
  std::vector<std::size_t> order(times.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return times[x] < times[y]; });
  CompensatedSum s;
  std::int64_t k = 0;
  for (const std::size_t i : order) {
    while (k < times[i]) {
      ++k;
      s.add(nu[k] * f[k] * g[k]);
    }
    out[i] = std::abs(s.value() / static_cast<double>(times[i]));
  }
  return out;
}

ExperimentReport decay_profile(const WeightSequence& nu, const DynSystem& system, std::span<const Point> x0_list,
                               const Observable& f, const Observable& g, std::int64_t a, std::int64_t b,
                               const TimeScale& scale) {
  const std::vector<std::int64_t> times = scale.times();
  if (times.empty()) throw PreconditionError("decay_profile: the time scale is empty");
  if (x0_list.empty()) throw PreconditionError("decay_profile: no sample points");
  if ((a < 0 || b < 0) && !system.invertible()) {
    throw InvertibilityError("decay_profile: negative a or b on the non-invertible doubling map");
  }
  const std::int64_t top = times.back();
  check_nu(nu, top, "decay_profile");
  std::vector<std::vector<double>> values(x0_list.size());
  parallel_for(x0_list.size(), [&](std::size_t i) {
    const auto fs = sample_observable(system, f, x0_list[i], a, top + 1);
    const auto gs = sample_observable(system, g, x0_list[i], b, top + 1);
    values[i] = bilinear_running(nu, fs, gs, times);
  });
  ExperimentReport r("decay_profile", {"x_index", "N", "abs_value"});
  r.header["weight"] = to_string(nu.kind());
  r.header["system"] = to_string(system.kind());
  r.header["alpha"] = system.alpha();
  r.header["a"] = a;
  r.header["b"] = b;
  r.header["rho"] = scale.rho;
  r.header["x_samples"] = x0_list.size();
  for (std::size_t i = 0; i < x0_list.size(); ++i) {
    for (std::size_t t = 0; t < times.size(); ++t) {
      r.add_row({static_cast<double>(i), static_cast<double>(times[t]), values[i][t]});
    }
  }
  std::vector<double> ns, med, mx;
  for (std::size_t t = 0; t < times.size(); ++t) {
    std::vector<double> col;
    for (const auto& v : values) col.push_back(v[t]);
    ns.push_back(static_cast<double>(times[t]));
    med.push_back(median(col));
    mx.push_back(*std::max_element(col.begin(), col.end()));
  }
  r.summary["N"] = ns;
  r.summary["median"] = med;
  r.summary["max"] = mx;
  const bool positive = std::all_of(med.begin(), med.end(), [](double v) { return v > 0.0; });
  if (times.size() >= 2 && positive) {
    r.summary["slope"] = log_log_slope(ns, med);
  } else {
    r.summary["slope"] = nullptr;
  }
  return r;
}

MaximalReport maximal_function(const WeightSequence& nu, std::span<const Complex> phi, std::span<const Complex> psi,
                               const TimeScale& scale, std::int64_t a, std::int64_t b) {
  if (phi.size() != psi.size()) throw ShapeError("maximal_function: phi and psi sizes differ");
  MaximalReport rep;
  rep.times = scale.times();
  if (rep.times.empty()) throw PreconditionError("maximal_function: the time scale is empty");
  const std::int64_t top = rep.times.back();
  check_nu(nu, top, "maximal_function");
  const auto size = static_cast<std::int64_t>(phi.size());
  rep.values.assign(phi.size(), 0.0);
  parallel_for(phi.size(), [&](std::size_t ji) {
    const auto j = static_cast<std::int64_t>(ji);
    CompensatedSum s;
    std::size_t next = 0;
    double best = 0.0;
    for (std::int64_t n = 1; n <= top; ++n) {
      const std::int64_t ia = j + a * n;
      const std::int64_t ib = j + b * n;
      if (ia >= 0 && ia < size && ib >= 0 && ib < size) s.add(nu[n] * phi[ia] * psi[ib]);
      if (n == rep.times[next]) {
        best = std::max(best, std::abs(s.value() / static_cast<double>(n)));
        ++next;
      }
    }
    rep.values[ji] = best;
  });
  std::vector<double> sorted = rep.values;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    rep.weak_type = std::max(rep.weak_type, sorted[k] * static_cast<double>(k + 1));
  }
  double p2 = 0.0, q2 = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    p2 += std::norm(phi[i]);
    q2 += std::norm(psi[i]);
  }
  rep.phi_l2 = std::sqrt(p2);
  rep.psi_l2 = std::sqrt(q2);
  const double denom = rep.phi_l2 * rep.psi_l2;
  rep.empirical_constant = denom > 0.0 ? rep.weak_type / denom : 0.0;
  return rep;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

SupEstimate wwdkbsz_statistic(std::span<const Complex> orbit_f, std::int64_t p, std::int64_t q, std::int64_t n,
                              int t_grid, bool conjugate) {
  if (p == q) throw PreconditionError("wwdkbsz_statistic: p and q must differ");
  if (!is_prime(p) || !is_prime(q)) throw PreconditionError("wwdkbsz_statistic: p and q must be prime");
  if (n < 1) throw PreconditionError("wwdkbsz_statistic: N must be >= 1");
  if (static_cast<std::int64_t>(orbit_f.size()) <= std::max(p, q) * n) {
    throw RangeError("wwdkbsz_statistic: orbit shorter than max(p, q) N + 1");
  }
  // t -> (p - q) t covers the circle, so the sup is that of the plain polynomial
  std::vector<Complex> c(static_cast<std::size_t>(n));
  const double inv = 1.0 / static_cast<double>(n);
  for (std::int64_t k = 1; k <= n; ++k) {
    const Complex second = conjugate ? std::conj(orbit_f[q * k]) : orbit_f[q * k];
    c[k - 1] = orbit_f[p * k] * second * inv;
  }
  return sup_norm(TrigPolynomial(1, std::move(c)), t_grid);
}

ExperimentReport wwkbsz_criterion_check(const WeightSequence& nu, std::span<const Complex> orbit_f, double eps,
                                        std::int64_t n, std::int64_t prime_cap, bool conjugate) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("wwkbsz_criterion_check: eps must lie in (0, 1)");
  if (prime_cap < 3) throw PreconditionError("wwkbsz_criterion_check: prime_cap must be >= 3");
  check_nu(nu, n, "wwkbsz_criterion_check");
  const double full_range = std::exp(1.0 / eps);
  const std::int64_t top = full_range > static_cast<double>(prime_cap)
                               ? prime_cap
                               : static_cast<std::int64_t>(std::floor(full_range));
  std::vector<std::int64_t> primes;
  for (std::int64_t k = 2; k <= top; ++k) {
    if (is_prime(k)) primes.push_back(k);
  }
  if (primes.size() < 2) throw PreconditionError("wwkbsz_criterion_check: fewer than two primes in range");

  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size(); ++j) pairs.emplace_back(primes[i], primes[j]);
  }
  std::vector<SupEstimate> stats(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    stats[i] = wwdkbsz_statistic(orbit_f, pairs[i].first, pairs[i].second, n, kDefaultOversample, conjugate);
  });

  ExperimentReport r("wwkbsz_criterion", {"p", "q", "value", "error"});
  r.header["eps"] = eps;
  r.header["N"] = n;
  r.header["prime_cap"] = prime_cap;
  r.header["conjugate"] = conjugate;
  bool premise = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    r.add_row({static_cast<double>(pairs[i].first), static_cast<double>(pairs[i].second), stats[i].value,
               stats[i].error_bound});
    worst = std::max(worst, stats[i].value + stats[i].error_bound);
    premise = premise && stats[i].value + stats[i].error_bound < eps;
  }
  if (static_cast<std::int64_t>(orbit_f.size()) <= n) throw RangeError("wwkbsz_criterion_check: orbit shorter than N + 1");
  std::vector<Complex> c(static_cast<std::size_t>(n));
  const double inv = 1.0 / static_cast<double>(n);
  for (std::int64_t k = 1; k <= n; ++k) c[k - 1] = nu[k] * orbit_f[k] * inv;
  const SupEstimate lhs = sup_norm(TrigPolynomial(1, std::move(c)));
  const double rhs = 2.0 * std::sqrt(eps * std::log(1.0 / eps));
  r.summary["max_statistic"] = worst;
  r.summary["premise"] = premise;
  r.summary["lhs"] = lhs.value;
  r.summary["lhs_error"] = lhs.error_bound;
  r.summary["rhs"] = rhs;
  r.summary["holds"] = !premise || lhs.value <= rhs;
  r.summary["prime_range_complete"] = full_range <= static_cast<double>(prime_cap);
  return r;
}

SupEstimate ww_uniform_average(std::span<const Complex> orbit_f, std::span<const Complex> orbit_g, std::int64_t a,
                               std::int64_t b, std::int64_t n, int z_grid, std::int64_t origin) {
  if (n < 1) throw PreconditionError("ww_uniform_average: N must be >= 1");
  auto read = [&](std::span<const Complex> o, std::int64_t l, const char* name) {
    const std::int64_t i = origin + l;
    if (i < 0 || i >= static_cast<std::int64_t>(o.size())) {
      throw RangeError(std::string("ww_uniform_average: orbit ") + name + " misses iterate " + std::to_string(l));
    }
    return o[i];
  };
  std::vector<Complex> c(static_cast<std::size_t>(n));
  const double inv = 1.0 / static_cast<double>(n);
  for (std::int64_t k = 1; k <= n; ++k) c[k - 1] = read(orbit_f, a * k, "f") * read(orbit_g, b * k, "g") * inv;
  return sup_norm(TrigPolynomial(1, std::move(c)), z_grid);
}

ExperimentReport borel_cantelli_summary(const WeightSequence& nu, std::span<const Complex> phi,
                                        std::span<const Complex> psi, std::int64_t a, std::int64_t b,
                                        std::span<const double> deltas, std::int64_t n1) {
  ExperimentReport r("borel_cantelli", {"delta", "N0", "mean_maximal", "threshold", "exceedance_fraction",
                                        "exceedance_over_delta_power"});
  r.header["a"] = a;
  r.header["b"] = b;
  r.header["N1"] = n1;
  std::vector<double> sorted(deltas.begin(), deltas.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  for (const double delta : sorted) {
    int e = 0;
    if (!(delta > 0.0 && delta < 1.0) || std::frexp(delta, &e) != 0.5) {
      throw PreconditionError("borel_cantelli_summary: delta must be dyadic in (0, 1)");
    }
    const auto n0 = static_cast<std::int64_t>(std::ldexp(2.0, -e + 1));  // 2/delta
    if (n0 > n1) throw PreconditionError("borel_cantelli_summary: N0(delta) exceeds N1");
    const MaximalReport m = maximal_function(nu, phi, psi, TimeScale{2.0, n0, n1}, a, b);
    double mean = 0.0;
    for (double v : m.values) mean += v;
    mean /= static_cast<double>(m.values.size());
    const double threshold = std::pow(delta, 1e-9);
    const auto above = std::count_if(m.values.begin(), m.values.end(), [&](double v) { return v > threshold; });
    const double frac_above = static_cast<double>(above) / static_cast<double>(m.values.size());
    r.add_row({delta, static_cast<double>(n0), mean, threshold, frac_above, frac_above / std::pow(delta, 1e-6)});
  }
  if (r.rows.size() >= 2) {
    const auto means = r.column("mean_maximal");
    bool decreasing = true;
    for (std::size_t i = 1; i < means.size(); ++i) decreasing = decreasing && means[i] <= means[i - 1];
    r.summary["mean_decreasing_in_delta"] = decreasing;
  }
  const auto c = r.column("exceedance_over_delta_power");
  r.summary["empirical_constant"] = c.empty() ? 0.0 : *std::max_element(c.begin(), c.end());
  return r;
}

ExperimentReport decomposition_bound_check(const WeightSequence& nu, std::span<const Complex> f,
                                           std::span<const Complex> g, std::span<const Complex> f1,
                                           std::span<const Complex> g1, std::int64_t n) {
  const Complex full = weighted_bilinear(nu, f, g, n);
  const Complex part = weighted_bilinear(nu, f1, g1, n);
  if (f1.size() != f.size() || g1.size() != g.size()) throw ShapeError("decomposition_bound_check: sizes differ");
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double df = std::abs(f[k] - f1[k]);
    const double dg = std::abs(g[k] - g1[k]);
    t1 += df * std::abs(g[k]);
    t2 += std::abs(f1[k]) * dg;
    t3 += df * dg;
  }
  const double nd = static_cast<double>(n);
  const double lhs = std::abs(full - part);
  const double rhs = (t1 + t2 + t3) / nd;
  ExperimentReport r("decomposition_bound", {"lhs", "rhs"});
  r.add_row({lhs, rhs});
  r.summary["lhs"] = lhs;
  r.summary["rhs"] = rhs;
  r.summary["holds"] = lhs <= rhs + 1e-12;
  return r;
}

}  // namespace ergolab
