#include <doctest.h>

#include <cmath>

#include "ergolab/error.hpp"
#include "ergolab/fft.hpp"
#include "ergolab/kernels.hpp"
#include "ergolab/random.hpp"

using namespace ergolab;

namespace {

// Coefficients of an even kernel from 2K+1 >= support samples; exact up to rounding.
std::vector<double> sampled_coefficients(const std::function<double(double)>& f, std::int64_t support) {
  const std::int64_t g = 2 * support + 1;
  std::vector<Complex> s(static_cast<std::size_t>(g));
  for (std::int64_t k = 0; k < g; ++k) s[k] = f(static_cast<double>(k) / static_cast<double>(g));
  dft_negative(s);
  std::vector<double> out(static_cast<std::size_t>(g));
  for (std::int64_t j = -support; j <= support; ++j) {
    out[j + support] = s[(j + g) % g].real() / static_cast<double>(g);
  }
  return out;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("Fejer kernel") {
    CHECK(fejer_eval(5, 0.0) == 6.0);
    CHECK(fejer_eval(5, 3.0) == 6.0);
    CHECK(std::abs(fejer_eval(1, 0.5)) < 1e-30);
    Rng rng(4);
    const auto c = fejer_coefficients(8);
    for (int t = 0; t < 1000; ++t) {
      const double th = rng.uniform(-0.5, 0.5);
      REQUIRE(std::abs(fejer_eval(8, th) - c(th).real()) < 1e-12);
    }
    for (std::int64_t n : {0, 1, 7, 100, 1000}) {
      const double integral =
          panel_quadrature([n](double x) { return fejer_eval(n, x); }, -0.5, 0.5, 1.0 / (4.0 * (n + 1)));
      CHECK(integral == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(fejer_eval(-1, 0.1), PreconditionError);
  }

  TEST_CASE("de la Vallee Poussin multiplier") {
    CHECK(vdp_multiplier(4, 4, 0.0) == 1.0);
    CHECK(vdp_multiplier(4, 4, 8.0) == 0.0);
    CHECK(vdp_multiplier(4, 4, 6.0) == 0.5);
    CHECK(vdp_multiplier(4, 4, -6.0) == 0.5);
    const auto v = vdp_coefficients(4, 4);
    CHECK(v.lo() == -8);
    CHECK(v.coeff(4) == Complex(1.0));
    CHECK(v.coeff(8) == Complex(0.0));
    CHECK_THROWS_AS(vdp_coefficients(3, 0), PreconditionError);
  }

  TEST_CASE("de la Vallee Poussin kernel") {
    CHECK(vdp_eval(10, 3, 0.0) == 23.0);
    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
      const auto n = rng.integer(0, 200), p = rng.integer(1, 200);
      const double th = rng.uniform(-0.5, 0.5);
      REQUIRE(std::abs(vdp_eval(n, p, th) - vdp_coefficients(n, p)(th).real()) < 1e-10);
    }
    // V_{(n,n)} written through Fejer kernels; the index shift is n-1, 2n-1
    for (std::int64_t n : {1, 2, 5, 64}) {
      double worst_shifted = 0.0, worst_unshifted = 0.0;
      for (int k = 1; k < 200; ++k) {
        const double th = k / 401.0;
        worst_shifted = std::max(worst_shifted,
                                 std::abs(vdp_eval(n, n, th) - (2.0 * fejer_eval(2 * n - 1, th) - fejer_eval(n - 1, th))));
        worst_unshifted =
            std::max(worst_unshifted, std::abs(vdp_eval(n, n, th) - (2.0 * fejer_eval(2 * n, th) - fejer_eval(n, th))));
      }
      CHECK(worst_shifted < 1e-10);
      CHECK(worst_unshifted > 1e-3);
    }
  }

  TEST_CASE("sampled Fourier coefficients match the multiplier") {
    for (auto [n, p] : std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 1}, {4, 4}, {17, 3}, {100, 250}, {512, 512}}) {
      const auto c = sampled_coefficients([n, p](double x) { return vdp_eval(n, p, x); }, n + p);
      double worst = 0.0;
      for (std::int64_t j = -(n + p); j <= n + p; ++j) {
        worst = std::max(worst, std::abs(c[j + n + p] - vdp_multiplier(n, p, static_cast<double>(j))));
      }
      CHECK(worst < 1e-10);
    }
  }

  TEST_CASE("smoothed multiplier") {
    const auto s = vdp_smooth_coefficients(100, 20);
    CHECK(s.lo() == -120);
    for (std::int64_t j = -100; j <= 100; ++j) REQUIRE(s.coeff(j).real() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::int64_t j = 100; j < 120; ++j) REQUIRE(s.coeff(j + 1).real() <= s.coeff(j).real() + 1e-14);
    CHECK(std::abs(s.coeff(120)) < 1e-14);
    CHECK(std::abs(s.coeff(110).real() - 0.5) < 1e-12);
    // symmetric
    for (std::int64_t j = 0; j <= 120; ++j) REQUIRE(s.coeff(j) == s.coeff(-j));
    const KernelSpec spec{100, 20, 0.2, KernelForm::vdp_smooth};
    CHECK(kernel_eval(spec, 0.0) == doctest::Approx(s(0.0).real()).epsilon(1e-12));
    CHECK(kernel_eval(spec, 0.013) == doctest::Approx(s(0.013).real()).epsilon(1e-9));
  }

  TEST_CASE("kernel forms by name") {
    CHECK(kernel_form_from_string("fejer") == KernelForm::fejer);
    CHECK(to_string(KernelForm::vdp_smooth) == "vdp_smooth");
    CHECK_THROWS_AS(kernel_form_from_string("dirichlet"), UsageError);
  }

  TEST_CASE("tail mass") {
    const auto t = tail_mass(64, 64, 16.0, 256);
    CHECK(t.window == 16.0 / 256.0);
    CHECK(t.integral <= t.proof_bound);
    CHECK(t.integral <= t.direct_bound);
    CHECK(t.proof_bound == doctest::Approx(256.0 * 256.0 / (64.0 * 256.0)));
    CHECK_THROWS_AS(tail_mass(64, 64, 128.0, 256), PreconditionError);
    CHECK_THROWS_AS(tail_mass(64, 64, 200.0, 256), PreconditionError);
    // the full-circle integral of |V| is at least its mean 1
    CHECK(vdp_tail_integral(8, 8, 0.0) >= 1.0 - 1e-12);
    CHECK(vdp_tail_integral(8, 8, 0.0) == doctest::Approx(2.0 * panel_quadrature([](double x) {
                                                            return std::abs(vdp_eval(8, 8, x));
                                                          }, 0.0, 0.5, 1e-3)).epsilon(1e-9));
  }

  TEST_CASE("smoothing speeds up the tail decay") {
    const auto r1 = smooth_vdp_tail_check(512, 0.05, 40.0, 2.0);
    const auto r2 = smooth_vdp_tail_check(512, 0.05, 160.0, 2.0);
    const double s1 = r1.at(0, "lhs"), s2 = r2.at(0, "lhs");
    const double u1 = r1.at(0, "lhs_unsmoothed"), u2 = r2.at(0, "lhs_unsmoothed");
    MESSAGE("smooth " << s1 << " -> " << s2 << ", unsmoothed " << u1 << " -> " << u2);
    CHECK(s2 < s1);
    CHECK(s1 / s2 > u1 / u2);
    CHECK(r1.at(0, "p") == 25.0);
    const auto withc = smooth_vdp_tail_check(512, 0.05, 40.0, 2.0, 1e6);
    CHECK(withc.summary["holds"].get<bool>());
    CHECK_THROWS_AS(smooth_vdp_tail_check(512, 0.2, 40.0, 2.0), PreconditionError);
    CHECK_THROWS_AS(smooth_vdp_tail_check(512, 0.05, 10.0, 2.0), PreconditionError);
    CHECK_THROWS_AS(smooth_vdp_tail_check(512, 0.05, 40.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(smooth_vdp_tail_check(40, 0.05, 40.0, 2.0), PreconditionError);
  }
}
