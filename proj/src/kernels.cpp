#include "ergolab/kernels.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ergolab/error.hpp"
#include "ergolab/parallel.hpp"

namespace ergolab {

std::string to_string(KernelForm form) {
  switch (form) {
    case KernelForm::fejer: return "fejer";
    case KernelForm::vdp: return "vdp";
    case KernelForm::vdp_smooth: return "vdp_smooth";
  }
  return "unknown";
}

KernelForm kernel_form_from_string(const std::string& name) {
  if (name == "fejer") return KernelForm::fejer;
  if (name == "vdp") return KernelForm::vdp;
  if (name == "vdp_smooth") return KernelForm::vdp_smooth;
  throw UsageError("unknown kernel form '" + name + "' (expected fejer, vdp or vdp_smooth)");
}

double sin_pi_multiple(std::int64_t k, double x) {
  // k x mod 2 from the centred fraction of k x / 2; halving is exact
  return sin_pi(2.0 * centred_frac_product(k, 0.5 * x));
}

double fejer_eval(std::int64_t n, double theta) {
  if (n < 0) throw PreconditionError("fejer_eval: n must be >= 0");
  const double s = sin_pi(theta);
  const double m = static_cast<double>(n + 1);
  if (s == 0.0) return m;
  const double q = sin_pi_multiple(n + 1, theta) / s;
  return q * q / m;
}

TrigPolynomial fejer_coefficients(std::int64_t n) {
  if (n < 0) throw PreconditionError("fejer_coefficients: n must be >= 0");
  std::vector<Complex> c(static_cast<std::size_t>(2 * n + 1));
  const double m = static_cast<double>(n + 1);
  for (std::int64_t j = -n; j <= n; ++j) c[j + n] = 1.0 - static_cast<double>(std::abs(j)) / m;
  return TrigPolynomial(-n, std::move(c));
}

namespace {

void check_np(std::int64_t n, std::int64_t p, const char* where) {
  if (n < 0 || p < 1) throw PreconditionError(std::string(where) + ": need n >= 0 and p >= 1");
}

// Even kernel 1 on [-n, n] plus ramp[k] at |j| = n + 1 + k.
double even_kernel_eval(std::int64_t n, const std::vector<double>& ramp, double x) {
  const double s = sin_pi(x);
  double v = s == 0.0 ? static_cast<double>(2 * n + 1) : sin_pi_multiple(2 * n + 1, x) / s;
  double acc = 0.0;
  const Complex step = cis_turns(x);
  Complex z;
  for (std::size_t k = 0; k < ramp.size(); ++k) {
    // rotate, re-anchoring every 32 terms
    z = k % 32 == 0 ? cis_turns(frac_product(n + 1 + static_cast<std::int64_t>(k), x)) : z * step;
    acc += ramp[k] * z.real();
  }
  return v + 2.0 * acc;
}

std::vector<double> smooth_ramp(std::int64_t n, std::int64_t p, double width_fraction) {
  const TrigPolynomial c = vdp_smooth_coefficients(n, p, width_fraction);
  std::vector<double> ramp;
  for (std::int64_t j = n + 1; j < n + p; ++j) ramp.push_back(c.coeff(j).real());
  return ramp;
}

double abs_tail(const std::function<double(double)>& f, double x0, std::int64_t scale) {
  if (!(x0 >= 0.0) || x0 >= 0.5) throw PreconditionError("tail integral: window must lie in [0, 1/2)");
  const double panel = 1.0 / (4.0 * static_cast<double>(std::max<std::int64_t>(scale, 1)));
  // even kernel: twice the integral over (x0, 1/2]
  return 2.0 * panel_quadrature([&](double x) { return std::abs(f(x)); }, x0, 0.5, panel);
}

}  // namespace

double vdp_multiplier(std::int64_t n, std::int64_t p, double t) {
  check_np(n, p, "vdp_multiplier");
  const double a = std::abs(t);
  const double nd = static_cast<double>(n);
  const double pd = static_cast<double>(p);
  if (a <= nd) return 1.0;
  if (a >= nd + pd) return 0.0;
  return (nd + pd - a) / pd;
}

TrigPolynomial vdp_coefficients(std::int64_t n, std::int64_t p) {
  check_np(n, p, "vdp_coefficients");
  const std::int64_t top = n + p;
  std::vector<Complex> c(static_cast<std::size_t>(2 * top + 1));
  for (std::int64_t j = -top; j <= top; ++j) c[j + top] = vdp_multiplier(n, p, static_cast<double>(j));
  return TrigPolynomial(-top, std::move(c));
}

double vdp_eval(std::int64_t n, std::int64_t p, double theta) {
  check_np(n, p, "vdp_eval");
  const double s = sin_pi(theta);
  if (s == 0.0) return static_cast<double>(2 * n + p);
  // sin^2 a - sin^2 b = sin(a - b) sin(a + b)
  const double num = sin_pi_multiple(p, theta) * sin_pi_multiple(2 * n + p, theta);
  return num / (static_cast<double>(p) * s * s);
}

TrigPolynomial vdp_smooth_coefficients(std::int64_t n, std::int64_t p, double width_fraction) {
  check_np(n, p, "vdp_smooth_coefficients");
  if (!(width_fraction > 0.0) || width_fraction >= 0.5) {
    throw PreconditionError("vdp_smooth_coefficients: width fraction must lie in (0, 1/2)");
  }
  const double w = width_fraction * static_cast<double>(p);
  const double n_inner = static_cast<double>(n) + w;
  const double p_inner = static_cast<double>(p) - 2.0 * w;
  const double norm = 35.0 / (32.0 * w);
  auto bump = [&](double u) {
    const double s = 1.0 - (u / w) * (u / w);
    return s > 0.0 ? norm * s * s * s : 0.0;
  };
  auto ramp = [&](double t) {
    const double a = std::abs(t);
    if (a <= n_inner) return 1.0;
    if (a >= n_inner + p_inner) return 0.0;
    return (n_inner + p_inner - a) / p_inner;
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  const std::int64_t top = n + p;
  std::vector<Complex> c(static_cast<std::size_t>(2 * top + 1));
  for (std::int64_t j = 0; j <= top; ++j) {
    double v;
    const double t = static_cast<double>(j);
    if (t <= n_inner - w) {
      v = 1.0;
    } else if (t >= n_inner + p_inner + w) {
      v = 0.0;
    } else {
      // the ramp has kinks at n_inner and n_inner + p_inner; split there
      std::vector<double> cuts{-w, w};
      for (double k : {t - n_inner, t - n_inner - p_inner}) {
        if (k > -w && k < w) cuts.push_back(k);
      }
      std::sort(cuts.begin(), cuts.end());
      v = 0.0;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        v += GK::integrate([&](double u) { return bump(u) * ramp(t - u); }, cuts[i], cuts[i + 1], 10, 1e-14);
      }
      v = std::clamp(v, 0.0, 1.0);
    }
    c[top + j] = v;
    c[top - j] = v;
  }
  return TrigPolynomial(-top, std::move(c));
}

double kernel_eval(const KernelSpec& spec, double theta) {
  switch (spec.form) {
    case KernelForm::fejer: return fejer_eval(spec.n, theta);
    case KernelForm::vdp: return vdp_eval(spec.n, spec.p, theta);
    case KernelForm::vdp_smooth: {
      const std::int64_t p = static_cast<std::int64_t>(std::floor(spec.gamma * static_cast<double>(spec.n)));
      if (p < 1) throw PreconditionError("kernel_eval: floor(gamma n) must be >= 1");
      return even_kernel_eval(spec.n, smooth_ramp(spec.n, p, 0.25), theta);
    }
  }
  throw UsageError("kernel_eval: unknown form");
}

namespace {

using GK15 = boost::math::quadrature::gauss_kronrod<double, 15>;

// Bisection until the error estimate meets an absolute or a 1e-13 relative
// tolerance. Boost reports the estimate on the reference interval [-1, 1],
// hence the half-width factor.
double adaptive_gk(const std::function<double(double)>& f, double lo, double hi, double tol, int depth) {
  double err = 0.0;
  const double est = GK15::integrate(f, lo, hi, 0, 0.0, &err);
  err *= 0.5 * (hi - lo);
  if (err <= std::max(tol, 1e-13 * std::abs(est)) || depth == 0) return est;
  const double mid = 0.5 * (lo + hi);
  return adaptive_gk(f, lo, mid, 0.5 * tol, depth - 1) + adaptive_gk(f, mid, hi, 0.5 * tol, depth - 1);
}

}  // namespace

double panel_quadrature(const std::function<double(double)>& f, double a, double b, double panel) {
  if (!(b > a)) return 0.0;
  const auto count = static_cast<std::size_t>(std::ceil((b - a) / panel));
  const double h = (b - a) / static_cast<double>(count);
  std::vector<double> part(count);
  parallel_for(count, [&](std::size_t i) {
    const double lo = a + h * static_cast<double>(i);
    const double hi = i + 1 == count ? b : a + h * static_cast<double>(i + 1);
    part[i] = adaptive_gk(f, lo, hi, 1e-13 * (hi - lo), 12);
  });
  double total = 0.0;
  for (double v : part) total += v;
  return total;
}

double vdp_tail_integral(std::int64_t n, std::int64_t p, double x0) {
  check_np(n, p, "vdp_tail_integral");
  return abs_tail([&](double x) { return vdp_eval(n, p, x); }, x0, n + p);
}

double vdp_smooth_tail_integral(std::int64_t n, std::int64_t p, double x0, double width_fraction) {
  const std::vector<double> ramp = smooth_ramp(n, p, width_fraction);
  return abs_tail([&](double x) { return even_kernel_eval(n, ramp, x); }, x0, n + p);
}

TailMass tail_mass(std::int64_t n, std::int64_t p, double m, std::int64_t interval_len) {
  check_np(n, p, "tail_mass");
  if (interval_len < 1 || !(m > 0.0)) throw PreconditionError("tail_mass: need M > 0 and |I| >= 1");
  const double len = static_cast<double>(interval_len);
  TailMass t;
  t.window = m / len;
  if (t.window >= 0.5) {
    throw PreconditionError("tail_mass: M/|I| = " + std::to_string(t.window) + " leaves an empty exterior");
  }
  t.integral = vdp_tail_integral(n, p, t.window);
  const double pd = static_cast<double>(p);
  t.proof_bound = len * len / (pd * m * m);
  t.direct_bound = len / (2.0 * pd * m);
  return t;
}

ExperimentReport smooth_vdp_tail_check(std::int64_t n, double gamma, double m, double d, double c) {
  if (n < 1) throw PreconditionError("smooth_vdp_tail_check: n must be >= 1");
  if (!(gamma > 0.0 && gamma < 0.1)) throw PreconditionError("smooth_vdp_tail_check: gamma must lie in (0, 1/10)");
  if (!(m > 1.0 / gamma)) throw PreconditionError("smooth_vdp_tail_check: need M > 1/gamma");
  if (!(d > 1.0)) throw PreconditionError("smooth_vdp_tail_check: need D > 1");
  const auto p = static_cast<std::int64_t>(std::floor(gamma * static_cast<double>(n)));
  if (p < 4) throw PreconditionError("smooth_vdp_tail_check: floor(gamma n) must be >= 4");
  const double window = m / static_cast<double>(2 * n + 1);
  if (window >= 0.5) throw PreconditionError("smooth_vdp_tail_check: M/(2n+1) must be < 1/2");
  const std::int64_t len = 2 * (n + p) + 1;
  const double window_i = m / static_cast<double>(len);

  const double lhs = vdp_smooth_tail_integral(n, p, window);
  const double lhs_i = vdp_smooth_tail_integral(n, p, window_i);
  const double plain = vdp_tail_integral(n, p, window);
  const double scale = std::pow(gamma * m, -d) / gamma;

  ExperimentReport r("smooth_vdp_tail", {"n", "p", "gamma", "M", "D", "lhs", "lhs_interval_window",
                                         "lhs_unsmoothed", "scale", "ratio"});
  r.header["n"] = n;
  r.header["p"] = p;
  r.header["gamma"] = gamma;
  r.header["M"] = m;
  r.header["D"] = d;
  r.add_row({static_cast<double>(n), static_cast<double>(p), gamma, m, d, lhs, lhs_i, plain, scale, lhs / scale});
  r.summary["lhs"] = lhs;
  r.summary["ratio"] = lhs / scale;
  if (std::isfinite(c)) {
    r.summary["C"] = c;
    r.summary["rhs"] = c * scale;
    r.summary["holds"] = lhs <= c * scale;
  }
  return r;
}

}  // namespace ergolab
