#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>

#include "ergolab/report.hpp"
#include "ergolab/spectra.hpp"

namespace ergolab {

enum class KernelForm { fejer, vdp, vdp_smooth };

std::string to_string(KernelForm form);
KernelForm kernel_form_from_string(const std::string& name);

struct KernelSpec {
  std::int64_t n = 1;
  std::int64_t p = 1;
  double gamma = 0.0;  // vdp_smooth only
  KernelForm form = KernelForm::vdp;
};

/// sin(pi k x) with k x reduced exactly modulo 2.
double sin_pi_multiple(std::int64_t k, double x);

/// K_n(theta) = (1/(n+1)) (sin(pi(n+1)theta) / sin(pi theta))^2; n+1 at integers.
double fejer_eval(std::int64_t n, double theta);

/// Coefficients 1 - |j|/(n+1) on [-n, n].
TrigPolynomial fejer_coefficients(std::int64_t n);

/// Piecewise-linear multiplier v_{n,p}(t) at a real argument.
double vdp_multiplier(std::int64_t n, std::int64_t p, double t);

/// Coefficients v_{n,p}(j) on [-(n+p), n+p].
TrigPolynomial vdp_coefficients(std::int64_t n, std::int64_t p);

/// V_{(n,p)}(x) = (1/p)(sin^2(pi(n+p)x) - sin^2(pi n x)) / sin^2(pi x); 2n+p at integers.
double vdp_eval(std::int64_t n, std::int64_t p, double theta);

/// Mollified multiplier: 1 on [-n, n], support [-(n+p), n+p]. The ramp of
/// v_{n + w, p - 2w} is convolved with the C^2 bump (1 - (u/w)^2)^3 of
/// half-width w = width_fraction * p.
TrigPolynomial vdp_smooth_coefficients(std::int64_t n, std::int64_t p, double width_fraction = 0.25);

/// Kernel value for any form, from closed forms where they exist.
double kernel_eval(const KernelSpec& spec, double theta);

/// Integral of |V_{(n,p)}| over {x0 < |x| <= 1/2} by Gauss-Kronrod panels
/// no wider than 1/(4(n+p)).
double vdp_tail_integral(std::int64_t n, std::int64_t p, double x0);

/// Same for the smoothed kernel built by vdp_smooth_coefficients.
double vdp_smooth_tail_integral(std::int64_t n, std::int64_t p, double x0, double width_fraction = 0.25);

/// Integral of f over [a, b] on panels of width <= panel, summed in order.
double panel_quadrature(const std::function<double(double)>& f, double a, double b, double panel);

struct TailMass {
  double window = 0.0;       // M / |I|
  double integral = 0.0;     // integral of |V| outside the window
  double proof_bound = 0.0;  // |I|^2 / (p M^2)
  double direct_bound = 0.0; // |I| / (2 p M), from 1/sin^2(pi x) <= 1/(4x^2)
};

/// Tail mass of V_{(n,p)} outside {|x| <= M/|I|}. PreconditionError unless
/// 0 < M/|I| < 1/2.
TailMass tail_mass(std::int64_t n, std::int64_t p, double m, std::int64_t interval_len);

/// Smoothed kernel with p = floor(gamma n): tail integral over
/// {|x| > M/(2n+1)} against c * gamma^{-1} (gamma M)^{-D}, plus the
/// unsmoothed kernel and the window M/|I| with |I| = 2(n+p)+1 for contrast.
/// A non-finite c reports the ratio only.
ExperimentReport smooth_vdp_tail_check(std::int64_t n, double gamma, double m, double d,
                                       double c = std::numeric_limits<double>::quiet_NaN());

}  // namespace ergolab
