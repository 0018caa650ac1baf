#include "ergolab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "ergolab/error.hpp"
#include "ergolab/fft.hpp"
#include "ergolab/parallel.hpp"

namespace ergolab {

namespace {

bool is_dyadic_unit(double delta) {
  int e = 0;
  return delta > 0.0 && delta < 1.0 && std::frexp(delta, &e) == 0.5;
}

}  // namespace

double theta_ramp(double delta, double t) {
  if (t <= delta) return 0.0;
  if (t >= 2.0 * delta) return 1.0;
  const double u = (t - delta) / delta;
  return u * u * u * (u * (6.0 * u - 15.0) + 10.0);
}

double sigma_delta(double delta, double t) {
  if (!is_dyadic_unit(delta)) throw PreconditionError("sigma_delta: delta must be a dyadic number in (0, 1)");
  if (!(t > 0.0 && t <= 1.0)) throw PreconditionError("sigma_delta: t must lie in (0, 1]");
  return theta_ramp(delta, t) - theta_ramp(2.0 * delta, t);
}

double torus_distance(double a, double b) {
  const double d = std::abs(frac(a) - frac(b));
  return std::min(d, 1.0 - d);
}

FrequencySet::FrequencySet(std::vector<double> points) : points_(std::move(points)) {
  for (auto& p : points_) {
    if (!std::isfinite(p)) throw DomainError("FrequencySet: non-finite point");
    p = frac(p);
  }
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end()) {
    throw DegenerateError("FrequencySet: duplicate points");
  }
  if (points_.size() >= 2) {
    min_gap_ = 1.0 - points_.back() + points_.front();
    for (std::size_t i = 1; i < points_.size(); ++i) min_gap_ = std::min(min_gap_, points_[i] - points_[i - 1]);
  }
}

std::vector<std::pair<double, double>> FrequencySet::neighborhood_arcs(double eps) const {
  if (!(eps > 0.0)) throw PreconditionError("neighborhood: eps must be positive");
  std::vector<std::pair<double, double>> raw;
  if (points_.empty()) return raw;
  if (eps >= 0.5) return {{0.0, 1.0}};
  for (const double p : points_) {
    const double a = p - eps, b = p + eps;
    if (a < 0.0) {
      raw.emplace_back(a + 1.0, 1.0);
      raw.emplace_back(0.0, b);
    } else if (b > 1.0) {
      raw.emplace_back(a, 1.0);
      raw.emplace_back(0.0, b - 1.0);
    } else {
      raw.emplace_back(a, b);
    }
  }
  std::sort(raw.begin(), raw.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& arc : raw) {
    if (!merged.empty() && arc.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, arc.second);
    } else {
      merged.push_back(arc);
    }
  }
  return merged;
}

bool FrequencySet::within(double t, double eps) const {
  if (points_.empty()) return false;
  const double x = frac(t);
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  const double next = it == points_.end() ? points_.front() : *it;
  const double prev = it == points_.begin() ? points_.back() : *(it - 1);
  return torus_distance(x, next) < eps || torus_distance(x, prev) < eps;
}

double neighborhood_measure(const FrequencySet& e, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw PreconditionError("neighborhood_measure: eps must lie in (0, 1/2)");
  double total = 0.0;
  for (const auto& [a, b] : e.neighborhood_arcs(eps)) total += b - a;
  return std::min(total, 1.0);
}

FrequencySet mz_nodes(std::int64_t j) {
  if (j < 1) throw PreconditionError("mz_nodes: J must be >= 1");
  std::vector<double> pts(static_cast<std::size_t>(j + 1));
  for (std::int64_t k = 0; k <= j; ++k) pts[k] = static_cast<double>(k) / static_cast<double>(j + 1);
  return FrequencySet(std::move(pts));
}

namespace {

// |P0| at k/size for P0(l) = sum_{n=1}^{J} psi(n) e(n l).
std::vector<double> grid_moduli(std::span<const Complex> psi, std::size_t size) {
  std::vector<Complex> buf(size);
  for (std::size_t i = 0; i < psi.size(); ++i) buf[(i + 1) % size] += psi[i];
  dft_positive(buf);
  std::vector<double> out(size);
  for (std::size_t k = 0; k < size; ++k) out[k] = std::abs(buf[k]);
  return out;
}

}  // namespace

LargeValueSet large_value_set(std::span<const Complex> psi, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("large_value_set: delta must lie in (0, 1)");
  if (psi.empty()) throw PreconditionError("large_value_set: J must be >= 1");
  for (const auto& v : psi) {
    if (std::abs(v) > 1.0 + 1e-12) throw BoundViolation("large_value_set: psi is not 1-bounded");
  }
  const auto j = static_cast<std::int64_t>(psi.size());
  const double jd = static_cast<double>(j);
  const double level = delta * jd;
  const std::size_t dense = static_cast<std::size_t>(64 * j);

  struct Candidate {
    double theta;
    double modulus;
  };
  std::vector<Candidate> cand;
  const auto nodes = grid_moduli(psi, static_cast<std::size_t>(j + 1));
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k] > level) cand.push_back({static_cast<double>(k) / (jd + 1.0), nodes[k]});
  }
  const auto fine = grid_moduli(psi, dense);
  for (std::size_t k = 0; k < fine.size(); ++k) {
    if (fine[k] > level) cand.push_back({static_cast<double>(k) / static_cast<double>(dense), fine[k]});
  }
  std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
    if (a.modulus != b.modulus) return a.modulus > b.modulus;
    return a.theta < b.theta;
  });

  const double sep = 1.0 / jd;
  std::set<double> kept;
  auto far_enough = [&](double t) {
    if (kept.empty()) return true;
    auto it = kept.lower_bound(t);
    const double next = it == kept.end() ? *kept.begin() : *it;
    const double prev = it == kept.begin() ? *kept.rbegin() : *std::prev(it);
    return torus_distance(t, next) >= sep && torus_distance(t, prev) >= sep;
  };
  for (const auto& c : cand) {
    if (far_enough(c.theta)) kept.insert(c.theta);
  }

  LargeValueSet out;
  out.points = FrequencySet(std::vector<double>(kept.begin(), kept.end()));
  out.j = j;
  out.delta = delta;
  out.separation = sep;
  out.separated = out.points.size() < 2 || out.points.min_gap() >= sep;
  out.normalized_size = static_cast<double>(out.points.size()) * delta * delta;
  out.dense_grid = static_cast<std::int64_t>(dense);
  out.contained = true;
  for (std::size_t k = 0; k < fine.size(); ++k) {
    if (fine[k] > level && !out.points.within(static_cast<double>(k) / static_cast<double>(dense), sep)) {
      out.contained = false;
      break;
    }
  }
  return out;
}

double arc_l2_squared(const TrigPolynomial& p, std::span<const std::pair<double, double>> arcs) {
  if (p.empty() || arcs.empty()) return 0.0;
  const auto c = p.coeffs();
  const auto len = static_cast<std::int64_t>(c.size());
  double measure = 0.0;
  for (const auto& [a, b] : arcs) measure += b - a;
  CompensatedSum total;
  double a0 = 0.0;
  for (const auto& v : c) a0 += std::norm(v);
  total.add(a0 * measure);
  for (std::int64_t k = 1; k < len; ++k) {
    CompensatedSum ak;
    for (std::int64_t n = 0; n + k < len; ++n) ak.add(c[n + k] * std::conj(c[n]));
    Complex w = 0.0;
    for (const auto& [a, b] : arcs) w += cis_turns(frac_product(k, b)) - cis_turns(frac_product(k, a));
    w /= Complex(0.0, kTwoPi * static_cast<double>(k));
    // the -k term is the conjugate
    total.add(2.0 * (ak.value() * w).real());
  }
  return total.value().real();
}

double arc_integral_rounding(const TrigPolynomial& p, std::size_t arc_count) {
  double s = 0.0;
  for (const auto& v : p.coeffs()) s += std::norm(v);
  const double l = static_cast<double>(std::max<std::size_t>(p.size(), 1));
  return 16.0 * std::numeric_limits<double>::epsilon() * l * (1.0 + std::log(l)) *
         static_cast<double>(arc_count + 1) * s;
}

ExperimentReport lp_lemma_check(const TrigPolynomial& p, std::span<const std::pair<std::int64_t, std::int64_t>> cells,
                                const FrequencySet& e, double r, double d, std::optional<double> epsilon) {
  if (p.empty()) throw DegenerateError("lp_lemma_check: P has empty support");
  if (!(r > 1.0)) throw PreconditionError("lp_lemma_check: R must be > 1");
  for (const auto& v : p.coeffs()) {
    if (std::abs(v) > 1.0 + 1e-12) throw BoundViolation("lp_lemma_check: coefficients must satisfy |g_n| <= 1");
  }
  if (cells.empty() || cells.front().first != p.lo() || cells.back().second != p.hi()) {
    throw ShapeError("lp_lemma_check: cells must start at lo and end at hi of the support");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].first > cells[i].second) throw ShapeError("lp_lemma_check: empty cell");
    if (i > 0 && cells[i].first != cells[i - 1].second + 1) {
      throw ShapeError("lp_lemma_check: cells overlap or leave a gap at " + std::to_string(cells[i].first));
    }
  }
  const double len = static_cast<double>(p.size());
  if (epsilon) {
    for (const auto& cell : cells) {
      if (!(static_cast<double>(cell.second - cell.first + 1) < *epsilon * len)) {
        throw PreconditionError("lp_lemma_check: localized form needs every cell shorter than eps |I|");
      }
    }
  }
  const double lhs_radius = epsilon ? r / len : 1.0 / len;
  const auto lhs_arcs = e.neighborhood_arcs(lhs_radius);
  const double lhs = arc_l2_squared(p, lhs_arcs);
  double slack = arc_integral_rounding(p, lhs_arcs.size());
  double rhs = 0.0;
  for (const auto& cell : cells) {
    const TrigPolynomial part = p.restricted(cell.first, cell.second);
    const auto arcs = e.neighborhood_arcs(r / static_cast<double>(cell.second - cell.first + 1));
    rhs += arc_l2_squared(part, arcs);
    slack += arc_integral_rounding(part, arcs.size());
  }
  const double excess = lhs - rhs > slack ? lhs - rhs : 0.0;
  const double budget = std::pow(r, -d) * static_cast<double>(e.size()) * len + std::pow(r, -0.25) * len;
  ExperimentReport rep(epsilon ? "lp_lemma_localized" : "lp_lemma",
                       {"lhs", "rhs_main", "excess", "budget", "C_hat"});
  rep.header["I_len"] = p.size();
  rep.header["cells"] = cells.size();
  rep.header["E_size"] = e.size();
  rep.header["R"] = r;
  rep.header["D"] = d;
  if (epsilon) rep.header["epsilon"] = *epsilon;
  rep.add_row({lhs, rhs, excess, budget, excess / budget});
  rep.summary["lhs"] = lhs;
  rep.summary["rhs_main"] = rhs;
  rep.summary["excess"] = excess;
  rep.summary["budget"] = budget;
  rep.summary["C_hat"] = excess / budget;
  rep.summary["rounding_allowance"] = slack;
  return rep;
}

ExperimentReport lambda_separated_check(const FrequencySet& e, const TrigPolynomial& f, int s, int j_max) {
  if (e.empty()) throw PreconditionError("lambda_separated_check: E is empty");
  if (s < 1 || j_max <= s) throw PreconditionError("lambda_separated_check: need 1 <= s < j_max");
  if (j_max > 20) throw CapacityError("lambda_separated_check: j_max above 20");
  if (e.size() >= 2 && e.min_gap() < std::ldexp(1.0, -(s - 1))) {
    throw PreconditionError("lambda_separated_check: points closer than 2^{-(s-1)}");
  }
  const double k_count = static_cast<double>(e.size());
  const double log_factor = std::max(1.0, std::pow(std::log(k_count), 2));
  const double f_norm = f.l2_norm();
  ExperimentReport rep("lambda_separated", {"lhs", "f_l2", "log_factor", "C_hat"});
  rep.header["K"] = e.size();
  rep.header["s"] = s;
  rep.header["j_max"] = j_max;
  if (f.empty() || f.is_zero()) {
    rep.add_row({0.0, 0.0, log_factor, 0.0});
    rep.summary["lhs"] = 0.0;
    rep.summary["C_hat"] = 0.0;
    return rep;
  }
  const std::int64_t t = std::int64_t{1} << (j_max + 4);
  const std::int64_t n_lo = -t - f.hi(), n_hi = t - f.lo();
  const std::int64_t k_lo = n_lo + f.lo(), k_hi = n_hi + f.hi();
  const auto n_count = static_cast<std::size_t>(n_hi - n_lo + 1);
  std::vector<double> sup(n_count, 0.0);
  const auto c = f.coeffs();
  for (int j = s + 1; j <= j_max; ++j) {
    const auto arcs = e.neighborhood_arcs(std::ldexp(1.0, -j));
    double measure = 0.0;
    for (const auto& [a, b] : arcs) measure += b - a;
    std::vector<Complex> w(static_cast<std::size_t>(k_hi - k_lo + 1));
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      if (k == 0) {
        w[k - k_lo] = measure;
        continue;
      }
      Complex v = 0.0;
      for (const auto& [a, b] : arcs) v += cis_turns(frac_product(k, b)) - cis_turns(frac_product(k, a));
      w[k - k_lo] = v / Complex(0.0, kTwoPi * static_cast<double>(k));
    }
    parallel_for(n_count, [&](std::size_t i) {
      const std::int64_t n = n_lo + static_cast<std::int64_t>(i);
      Complex g = 0.0;
      for (std::size_t m = 0; m < c.size(); ++m) g += c[m] * w[n + f.lo() + static_cast<std::int64_t>(m) - k_lo];
      sup[i] = std::max(sup[i], std::abs(g));
    });
  }
  double l2 = 0.0;
  for (double v : sup) l2 += v * v;
  const double lhs = std::sqrt(l2);
  const double c_hat = lhs / (log_factor * f_norm);
  rep.add_row({lhs, f_norm, log_factor, c_hat});
  rep.summary["lhs"] = lhs;
  rep.summary["rhs_scale"] = log_factor * f_norm;
  rep.summary["C_hat"] = c_hat;
  return rep;
}

namespace {

double vec_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

double vec_norm(const std::vector<Complex>& a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace

std::vector<double> farthest_point_radii(const std::vector<std::vector<Complex>>& points, bool origin_seed) {
  const std::size_t n = points.size();
  for (const auto& p : points) {
    if (p.size() != (n ? points[0].size() : 0)) throw ShapeError("entropy_numbers: points differ in dimension");
  }
  std::vector<double> r;
  r.reserve(n + 1);
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  if (origin_seed) {
    for (std::size_t i = 0; i < n; ++i) dist[i] = vec_norm(points[i]);
  }
  auto current = [&]() {
    double m = n == 0 ? 0.0 : -1.0;
    for (double v : dist) m = std::max(m, v);
    return m;
  };
  r.push_back(current());
  for (std::size_t m = 0; m < n; ++m) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (dist[i] > dist[pick]) pick = i;
    }
    const auto centre = points[pick];
    for (std::size_t i = 0; i < n; ++i) dist[i] = std::min(dist[i], vec_distance(points[i], centre));
    r.push_back(current());
  }
  return r;
}

namespace {

EntropyResult entropy_from_radii(const std::vector<double>& r, double t) {
  EntropyResult out;
  std::size_t m = 0;
  while (m < r.size() && r[m] > t) ++m;
  out.count = m;
  std::size_t lb = 0;
  for (std::size_t k = 1; k < r.size(); ++k) {
    if (r[k - 1] > 2.0 * t) lb = k;
  }
  out.lower_bound = std::min(lb, out.count);
  return out;
}

}  // namespace

EntropyResult entropy_numbers(const std::vector<std::vector<Complex>>& points, double t) {
  if (!(t > 0.0)) throw PreconditionError("entropy_numbers: t must be positive");
  if (points.empty()) return {};
  return entropy_from_radii(farthest_point_radii(points, false), t);
}

ExperimentReport entropy_gamma_check(std::span<const Complex> f, const FrequencySet& lambdas, double tau,
                                     std::int64_t n_max, double t) {
  if (!(tau > 0.0) || !(t > 0.0)) throw PreconditionError("entropy_gamma_check: tau and t must be positive");
  if (lambdas.empty()) throw PreconditionError("entropy_gamma_check: no frequencies");
  if (lambdas.size() >= 2 && lambdas.min_gap() < tau) {
    throw PreconditionError("entropy_gamma_check: frequencies closer than tau");
  }
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 1; n <= n_max; n *= 2) {
    if (static_cast<double>(n) > 1.0 / tau) ns.push_back(n);
  }
  if (ns.empty()) throw PreconditionError("entropy_gamma_check: no dyadic N in (1/tau, N_max]");
  const auto len = static_cast<std::int64_t>(f.size());
  const std::int64_t top = ns.back();
  const std::int64_t x_lo = -top, x_hi = len - 1;
  const auto x_count = static_cast<std::size_t>(x_hi - x_lo + 1);
  const auto lam = lambdas.points();
  const std::size_t k = lam.size();
  std::vector<std::size_t> counts(x_count, 0);
  parallel_for(x_count, [&](std::size_t xi) {
    const std::int64_t x = x_lo + static_cast<std::int64_t>(xi);
    std::vector<std::vector<Complex>> gamma;
    std::vector<Complex> run(k, 0.0);
    std::int64_t u = 0;
    for (const std::int64_t n : ns) {
      for (; u <= n; ++u) {
        const std::int64_t idx = x + u;
        if (idx < 0 || idx >= len) continue;
        for (std::size_t q = 0; q < k; ++q) run[q] += f[idx] * cis_turns(frac_product(u, lam[q]));
      }
      std::vector<Complex> v(k);
      for (std::size_t q = 0; q < k; ++q) v[q] = run[q] / static_cast<double>(n);
      gamma.push_back(std::move(v));
    }
    counts[xi] = entropy_from_radii(farthest_point_radii(gamma, true), t).count;
  });
  ExperimentReport rep("entropy_gamma", {"x", "count"});
  rep.header["K"] = k;
  rep.header["tau"] = tau;
  rep.header["N_max"] = n_max;
  rep.header["t"] = t;
  double total = 0.0;
  for (std::size_t i = 0; i < x_count; ++i) {
    if (counts[i] == 0) continue;
    rep.add_row({static_cast<double>(x_lo + static_cast<std::int64_t>(i)), static_cast<double>(counts[i])});
    total += static_cast<double>(counts[i]);
  }
  double f2 = 0.0;
  for (const auto& v : f) f2 += std::norm(v);
  rep.summary["sum_count"] = total;
  rep.summary["f_l2_squared"] = f2;
  rep.summary["C_hat"] = f2 > 0.0 ? total * t * t / f2 : 0.0;
  return rep;
}

VariationResult variation_norm(std::span<const Complex> a, double s) {
  if (!(s >= 1.0)) throw PreconditionError("variation_norm: s must be >= 1");
  VariationResult out;
  if (a.size() < 2) return out;
  if (a.size() > kVariationExactCap) {
    double sum = 0.0;
    for (std::size_t i = 1; i < a.size(); ++i) sum += std::pow(std::abs(a[i] - a[i - 1]), s);
    out.value = std::pow(sum, 1.0 / s);
    out.exact = false;
    return out;
  }
  std::vector<double> best(a.size(), 0.0);
  double top = 0.0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    double b = 0.0;
    for (std::size_t j = 0; j < i; ++j) b = std::max(b, best[j] + std::pow(std::abs(a[i] - a[j]), s));
    best[i] = b;
    top = std::max(top, b);
  }
  out.value = std::pow(top, 1.0 / s);
  return out;
}

}  // namespace ergolab
