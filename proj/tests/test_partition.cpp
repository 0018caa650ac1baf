#include <doctest.h>

#include <cmath>

#include "ergolab/error.hpp"
#include "ergolab/kernels.hpp"
#include "ergolab/partition.hpp"
#include "ergolab/random.hpp"
#include "oracles.hpp"

using namespace ergolab;

namespace {

TrigPolynomial random_poly(Rng& rng, std::int64_t lo, std::size_t len) {
  std::vector<Complex> c(len);
  for (auto& v : c) v = rng.disc();
  return TrigPolynomial(lo, std::move(c));
}

}  // namespace

TEST_SUITE("partition") {
  TEST_CASE("dyadic partition of unity") {
    CHECK(theta_ramp(0.25, 0.1) == 0.0);
    CHECK(theta_ramp(0.25, 0.5) == 1.0);
    CHECK(sigma_delta(0.125, 0.1) == 0.0);
    CHECK(sigma_delta(0.125, 0.25) == 1.0);
    CHECK(sigma_delta(0.125, 0.6) == 0.0);
    Rng rng(10);
    for (int t = 0; t < 1000; ++t) {
      const double x = std::ldexp(1.0, -19) + rng.uniform() * (1.0 - std::ldexp(1.0, -19));
      double sum = 0.0;
      for (int k = 1; k <= 20; ++k) sum += sigma_delta(std::ldexp(1.0, -k), x);
      REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(sigma_delta(0.3, 0.5), PreconditionError);
    CHECK_THROWS_AS(sigma_delta(0.25, 0.0), PreconditionError);
    CHECK_THROWS_AS(sigma_delta(0.25, 1.5), PreconditionError);
  }

  TEST_CASE("frequency sets and neighbourhoods") {
    CHECK(torus_distance(0.05, 0.95) == doctest::Approx(0.1));
    const FrequencySet one({0.3});
    CHECK(neighborhood_measure(one, 0.1) == doctest::Approx(0.2));
    CHECK(neighborhood_measure(FrequencySet({0.3, 0.35}), 0.1) == doctest::Approx(0.25));
    CHECK(neighborhood_measure(FrequencySet({0.02}), 0.1) == doctest::Approx(0.2));
    CHECK(neighborhood_measure(mz_nodes(9), 0.05) == doctest::Approx(1.0));
    const auto arcs = FrequencySet({0.02, 0.5}).neighborhood_arcs(0.1);
    CHECK(arcs.size() == 3);
    CHECK(FrequencySet({0.02}).within(0.97, 0.1));
    CHECK_FALSE(FrequencySet({0.02}).within(0.5, 0.1));
    CHECK(FrequencySet({1.25, 0.5}).points()[0] == 0.25);
    CHECK(FrequencySet({0.1, 0.4, 0.95}).min_gap() == doctest::Approx(0.15));
    CHECK_THROWS_AS(FrequencySet({0.25, 1.25}), DegenerateError);
    CHECK_THROWS_AS(neighborhood_measure(one, 0.5), PreconditionError);
    Rng rng(2);
    for (int t = 0; t < 200; ++t) {
      std::vector<double> pts;
      for (int k = 0; k < 10; ++k) pts.push_back(rng.uniform());
      const FrequencySet e(pts);
      const double eps = rng.uniform(0.001, 0.2);
      const double m = neighborhood_measure(e, eps);
      REQUIRE(m <= 2.0 * eps * 10 + 1e-15);
      // Monte Carlo agreement on a fine grid
      std::int64_t hits = 0;
      const std::int64_t g = 1 << 14;
      for (std::int64_t i = 0; i < g; ++i) hits += e.within((i + 0.5) / g, eps) ? 1 : 0;
      REQUIRE(std::abs(static_cast<double>(hits) / g - m) < 40.0 / g);
    }
  }

  TEST_CASE("Marcinkiewicz-Zygmund nodes") {
    const auto n1 = mz_nodes(1);
    CHECK(n1.size() == 2);
    CHECK(n1.points()[1] == 0.5);
    for (std::int64_t j : {3, 64, 1000}) {
      CHECK(mz_nodes(j).min_gap() == doctest::Approx(1.0 / static_cast<double>(j + 1)).epsilon(1e-12));
    }
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
      const std::int64_t j = rng.integer(2, 200);
      const auto p = random_poly(rng, -(j / 2) + rng.integer(0, j / 4), static_cast<std::size_t>(j / 2 + 1));
      const auto nodes = mz_nodes(j);
      double avg = 0.0;
      for (double l : nodes.points()) avg += std::norm(p(l));
      avg /= static_cast<double>(j + 1);
      REQUIRE(avg == doctest::Approx(p.l2_norm() * p.l2_norm()).epsilon(1e-12));
    }
  }

  TEST_CASE("large value sets") {
    const std::int64_t j = 128;
    const auto coherent = large_value_set(std::vector<Complex>(j, 1.0), 0.5);
    CHECK(coherent.separated);
    CHECK(coherent.contained);
    REQUIRE(coherent.points.size() >= 1);
    for (double l : coherent.points.points()) CHECK(torus_distance(l, 0.0) < 1.0 / static_cast<double>(j));
    CHECK(large_value_set(std::vector<Complex>(j, 1.0), 0.999).points.size() <= 1);
    Rng rng(4);
    for (int t = 0; t < 10; ++t) {
      std::vector<Complex> psi(512);
      for (auto& v : psi) v = rng.sign();
      const auto e = large_value_set(psi, 0.2);
      REQUIRE(e.separated);
      REQUIRE(e.contained);
      REQUIRE((e.points.size() < 2 || e.points.min_gap() >= 1.0 / 512.0 - 1e-15));
      REQUIRE(e.normalized_size <= 2.0);
      // every kept point is a genuine large value
      for (double l : e.points.points()) {
        REQUIRE(std::abs(TrigPolynomial(1, psi)(l)) > 0.2 * 512.0);
      }
    }
    CHECK_THROWS_AS(large_value_set(std::vector<Complex>(8, 1.0), 1.5), PreconditionError);
  }

  TEST_CASE("arc integrals") {
    const auto p = TrigPolynomial::monomial(3);
    const std::vector<std::pair<double, double>> full{{0.0, 1.0}};
    CHECK(arc_l2_squared(p, full) == doctest::Approx(1.0).epsilon(1e-14));
    const std::vector<std::pair<double, double>> half{{0.1, 0.35}, {0.6, 0.85}};
    CHECK(arc_l2_squared(p, half) == doctest::Approx(0.5).epsilon(1e-14));
    Rng rng(5);
    for (int t = 0; t < 30; ++t) {
      const auto q = random_poly(rng, rng.integer(-20, 20), static_cast<std::size_t>(rng.integer(1, 24)));
      const double a = rng.uniform(0.0, 0.5), b = a + rng.uniform(0.0, 0.5);
      const std::vector<std::pair<double, double>> arc{{a, b}};
      const double quad = panel_quadrature([&](double x) { return std::norm(q(x)); }, a, b, 1.0 / 256.0);
      REQUIRE(arc_l2_squared(q, arc) == doctest::Approx(quad).epsilon(1e-9));
    }
  }

  TEST_CASE("LP inequality") {
    Rng rng(6);
    const std::int64_t len = 256;
    for (int t = 0; t < 40; ++t) {
      const auto p = random_poly(rng, rng.integer(-300, 300), static_cast<std::size_t>(len));
      std::vector<double> pts;
      for (int k = 0; k < 8; ++k) pts.push_back(rng.uniform());
      const FrequencySet e(pts);
      const std::vector<std::pair<std::int64_t, std::int64_t>> whole{{p.lo(), p.hi()}};
      const auto r0 = lp_lemma_check(p, whole, e, 16.0, 2.0);
      REQUIRE(r0.summary["excess"].get<double>() == 0.0);
      REQUIRE(r0.summary["lhs"].get<double>() <= r0.summary["rhs_main"].get<double>() + 1e-9);
      std::vector<std::pair<std::int64_t, std::int64_t>> four;
      for (std::int64_t c = 0; c < 4; ++c) four.emplace_back(p.lo() + 64 * c, p.lo() + 64 * c + 63);
      const auto r4 = lp_lemma_check(p, four, e, 16.0, 2.0);
      REQUIRE(std::isfinite(r4.summary["C_hat"].get<double>()));
      REQUIRE(r4.summary["C_hat"].get<double>() >= 0.0);
      std::vector<std::pair<std::int64_t, std::int64_t>> sixteenths;
      for (std::int64_t c = 0; c < 32; ++c) sixteenths.emplace_back(p.lo() + 8 * c, p.lo() + 8 * c + 7);
      const auto rl = lp_lemma_check(p, sixteenths, e, 16.0, 2.0, 1.0 / 16.0);
      REQUIRE(std::isfinite(rl.summary["C_hat"].get<double>()));
    }
    const auto p = TrigPolynomial(0, std::vector<Complex>(16, 1.0));
    const FrequencySet e({0.1});
    const std::vector<std::pair<std::int64_t, std::int64_t>> gap{{0, 6}, {8, 15}};
    const std::vector<std::pair<std::int64_t, std::int64_t>> overlap{{0, 8}, {8, 15}};
    const std::vector<std::pair<std::int64_t, std::int64_t>> halves{{0, 7}, {8, 15}};
    CHECK_THROWS_AS(lp_lemma_check(p, gap, e, 4.0, 2.0), ShapeError);
    CHECK_THROWS_AS(lp_lemma_check(p, overlap, e, 4.0, 2.0), ShapeError);
    CHECK_THROWS_AS(lp_lemma_check(p, halves, e, 4.0, 2.0, 0.25), PreconditionError);
    CHECK_THROWS_AS(lp_lemma_check(p, halves, e, 1.0, 2.0), PreconditionError);
    CHECK_THROWS_AS(lp_lemma_check(TrigPolynomial(0, std::vector<Complex>(16, 2.0)), halves, e, 4.0, 2.0),
                    BoundViolation);
  }

  TEST_CASE("lambda-separated square function") {
    const FrequencySet e({0.25});
    const auto zero = lambda_separated_check(e, TrigPolynomial(0, {0.0, 0.0}), 1, 6);
    CHECK(zero.summary["lhs"].get<double>() == 0.0);
    const auto single = lambda_separated_check(e, TrigPolynomial::monomial(3), 1, 8);
    CHECK(std::isfinite(single.summary["C_hat"].get<double>()));
    CHECK(single.summary["lhs"].get<double>() > 0.0);
    CHECK(single.summary["lhs"].get<double>() <= 1.0);
    std::vector<double> pts;
    for (int k = 0; k < 8; ++k) pts.push_back(k / 8.0);
    const FrequencySet eight(pts);
    Rng rng(7);
    for (int t = 0; t < 5; ++t) {
      const auto f = random_poly(rng, rng.integer(-40, 0), 40);
      const auto r = lambda_separated_check(eight, f, 4, 9);
      REQUIRE(r.summary["C_hat"].get<double>() < 10.0);
    }
    CHECK_THROWS_AS(lambda_separated_check(eight, TrigPolynomial::monomial(0), 2, 9), PreconditionError);
    CHECK_THROWS_AS(lambda_separated_check(eight, TrigPolynomial::monomial(0), 4, 4), PreconditionError);
  }

  TEST_CASE("entropy numbers") {
    const std::vector<std::vector<Complex>> one{{Complex(1.0, 2.0), 3.0}};
    for (double t : {0.01, 1.0, 100.0}) CHECK(entropy_numbers(one, t).count == 1);
    const std::vector<std::vector<Complex>> two{{0.0, 0.0}, {3.0, 0.0}};
    CHECK(entropy_numbers(two, 1.0).count == 2);
    CHECK(entropy_numbers(two, 1.0).lower_bound == 2);
    CHECK(entropy_numbers(two, 3.0).count == 1);
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<std::vector<Complex>> pts(static_cast<std::size_t>(rng.integer(1, 40)));
      for (auto& p : pts) p = {rng.disc(), rng.disc(), rng.disc()};
      std::size_t prev = pts.size() + 1;
      for (double t : {0.05, 0.1, 0.2, 0.4, 0.8, 1.6}) {
        const auto r = entropy_numbers(pts, t);
        REQUIRE(r.count <= pts.size());
        REQUIRE(r.count <= prev);
        REQUIRE(r.lower_bound <= r.count);
        prev = r.count;
      }
    }
    const auto radii = farthest_point_radii(two);
    CHECK(std::isinf(radii[0]));
    CHECK(radii[1] == doctest::Approx(3.0));
    CHECK(radii[2] == 0.0);
    CHECK_THROWS_AS(entropy_numbers(two, 0.0), PreconditionError);
  }

  TEST_CASE("entropy of Gamma_x") {
    Rng rng(9);
    std::vector<Complex> f(256);
    for (auto& v : f) v = rng.sign();
    std::vector<double> pts;
    for (int k = 0; k < 4; ++k) pts.push_back(k / 4.0 + 0.05);
    const auto r = entropy_gamma_check(f, FrequencySet(pts), 1.0 / 8.0, 64, 0.25);
    CHECK(r.rows.size() > 0);
    CHECK(r.summary["C_hat"].get<double>() >= 0.0);
    CHECK(std::isfinite(r.summary["C_hat"].get<double>()));
    CHECK_THROWS_AS(entropy_gamma_check(f, FrequencySet(pts), 1.0 / 8.0, 4, 0.25), PreconditionError);
  }

  TEST_CASE("variation norms") {
    CHECK(variation_norm(std::vector<Complex>(10, Complex(0.3, 0.1)), 2.0).value == 0.0);
    CHECK(variation_norm(std::vector<Complex>{0.0, 1.0, 0.0, 1.0}, 1.0).value == doctest::Approx(3.0));
    std::vector<Complex> mono;
    for (int k = 0; k < 10; ++k) mono.push_back(k * k * 0.1);
    CHECK(variation_norm(mono, 1.0).value == doctest::Approx(8.1));
    CHECK(variation_norm(mono, 64.0).value == doctest::Approx(8.1).epsilon(1e-6));
    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
      std::vector<Complex> a(static_cast<std::size_t>(rng.integer(1, 12)));
      for (auto& v : a) v = rng.disc();
      const double s = rng.uniform(1.0, 4.0);
      const auto r = variation_norm(a, s);
      REQUIRE(r.exact);
      REQUIRE(r.value == doctest::Approx(oracle::variation_exhaustive(a, s)).epsilon(1e-12));
    }
    CHECK_FALSE(variation_norm(std::vector<Complex>(kVariationExactCap + 1, 0.0), 2.0).exact);
    CHECK_THROWS_AS(variation_norm(mono, 0.5), PreconditionError);
  }
}
