#include <doctest.h>

#include <cmath>

#include "ergolab/averages.hpp"
#include "ergolab/error.hpp"
#include "ergolab/gowers.hpp"
#include "ergolab/random.hpp"
#include "oracles.hpp"

using namespace ergolab;

namespace {

WeightSequence ones(std::size_t n) { return WeightSequence::raw(std::vector<Complex>(n, 1.0)); }

std::vector<Complex> random_signs(Rng& rng, std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& x : v) x = rng.sign();
  return v;
}

}  // namespace

TEST_SUITE("averages") {
  TEST_CASE("time scales") {
    CHECK(TimeScale{2.0, 1, 16}.times() == std::vector<std::int64_t>{1, 2, 4, 8, 16});
    CHECK(TimeScale{1.5, 2, 10}.times() == std::vector<std::int64_t>{2, 3, 5, 7});
    CHECK(TimeScale{1.1, 1, 3}.times() == std::vector<std::int64_t>{1, 2, 3});
    CHECK_THROWS_AS((TimeScale{1.0, 1, 8}.times()), PreconditionError);
    CHECK_THROWS_AS((TimeScale{2.0, 9, 8}.times()), PreconditionError);
  }

  TEST_CASE("weighted bilinear averages") {
    const std::vector<Complex> one(101, 1.0);
    CHECK(weighted_bilinear(ones(100), one, one, 100) == Complex(1.0));
    const auto mu = mobius_sieve(100);
    CHECK(weighted_bilinear(mu, one, one, 100).real() == doctest::Approx(oracle::mertens(100) / 100.0).epsilon(1e-15));
    const auto la = liouville_sieve(500);
    std::vector<Complex> f(501), g(501);
    double sum = 0.0;
    for (std::int64_t n = 0; n <= 500; ++n) {
      f[n] = cis_turns(frac_product(n, kGoldenAlpha));
      g[n] = std::conj(f[n]);
      if (n >= 1) sum += la[n].real();
    }
    CHECK(std::abs(weighted_bilinear(la, f, g, 500) - Complex(sum / 500.0)) < 1e-14);
    const std::vector<std::int64_t> times{500, 10, 100};
    const auto run = bilinear_running(la, f, g, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      CHECK(run[i] == doctest::Approx(std::abs(weighted_bilinear(la, f, g, times[i]))).epsilon(1e-14));
    }
    CHECK_THROWS_AS(weighted_bilinear(la, f, std::vector<Complex>(10), 5), ShapeError);
    CHECK_THROWS_AS(weighted_bilinear(la, f, g, 501), ShapeError);
    CHECK_THROWS_AS(weighted_bilinear(mu, f, g, 200), RangeError);
  }

  TEST_CASE("transfer to the shift model is exact") {
    const auto mu = mobius_sieve(1 << 12);
    Rng rng(17);
    std::vector<Complex> tf(97), tg(97);
    for (auto& v : tf) v = rng.disc();
    for (auto& v : tg) v = rng.disc();
    const std::vector<std::pair<DynSystem, std::pair<Observable, Observable>>> cases{
        {DynSystem::cyclic(97), {Observable::from_table(tf), Observable::from_table(tg)}},
        {DynSystem::rotation(), {Observable::trig(1), Observable::trig(3, Complex(0.0, 1.0))}},
        {DynSystem::skew_product(), {Observable::trig(2), Observable::indicator(0.1, 0.6)}}};
    for (const auto& [sys, obs] : cases) {
      for (auto [a, b] : std::vector<std::pair<std::int64_t, std::int64_t>>{{1, -1}, {2, 3}}) {
        for (std::int64_t n : {1, 128, 1 << 12}) {
          const Point x0 = sys.seeded_point(static_cast<std::uint64_t>(n));
          const auto fs = sample_observable(sys, obs.first, x0, a, n + 1);
          const auto gs = sample_observable(sys, obs.second, x0, b, n + 1);
          const Complex dyn = weighted_bilinear(mu, fs, gs, n);
          const auto t = calderon_transfer(sys, x0, obs.first, obs.second, a, b, n);
          const Complex shift =
              weighted_bilinear(mu, shift_samples(t.phi, t.anchor, a, n), shift_samples(t.psi, t.anchor, b, n), n);
          REQUIRE(dyn == shift);
        }
      }
    }
  }

  TEST_CASE("decay profile") {
    const auto r = DynSystem::rotation();
    std::vector<Point> xs;
    for (std::uint64_t s = 0; s < 8; ++s) xs.push_back(r.seeded_point(s));
    const auto nu = mobius_sieve(1 << 14);
    const auto rep = decay_profile(nu, r, xs, Observable::trig(1), Observable::trig(1), 1, -1, TimeScale{2.0, 1 << 8, 1 << 14});
    CHECK(rep.rows.size() == 8 * 7);
    CHECK(rep.summary["slope"].get<double>() < 0.0);
    CHECK(rep.summary["median"].size() == 7);

    const auto flat = decay_profile(ones(1 << 12), r, xs, Observable::constant(), Observable::constant(), 1, -1,
                                    TimeScale{2.0, 16, 1 << 12});
    CHECK(flat.summary["slope"].get<double>() == doctest::Approx(0.0));
    CHECK_THROWS_AS(decay_profile(nu, DynSystem::doubling(1), xs, Observable::trig(1), Observable::trig(1), 1, -1,
                                  TimeScale{2.0, 1, 16}),
                    InvertibilityError);
    CHECK_THROWS_AS(decay_profile(nu, r, xs, Observable::trig(1), Observable::trig(1), 1, -1, TimeScale{2.0, 1, 1 << 20}),
                    RangeError);
  }

  TEST_CASE("maximal function against brute force") {
    const auto mu = mobius_sieve(512);
    const std::vector<Complex> nu1(mu.values().begin(), mu.values().end());
    Rng rng(23);
    for (std::int64_t j : {16, 100, 256}) {
      for (auto [a, b] : std::vector<std::pair<std::int64_t, std::int64_t>>{{1, -1}, {2, 3}, {1, 1}}) {
        const auto phi = random_signs(rng, static_cast<std::size_t>(j + 1));
        std::vector<Complex> psi(phi.size());
        for (auto& v : psi) v = rng.disc();
        const TimeScale scale{2.0, 1, j};
        const auto m = maximal_function(mu, phi, psi, scale, a, b);
        const auto ref = oracle::maximal_brute(nu1, phi, psi, m.times, a, b);
        for (std::size_t i = 0; i < ref.size(); ++i) REQUIRE(m.values[i] == doctest::Approx(ref[i]).epsilon(1e-12));
      }
    }
    // nu = phi = psi = 1 and a = 1, b = -1: m(j) = 1 while j +- N stay inside
    const std::int64_t j = 64;
    const std::vector<Complex> one(j + 1, 1.0);
    const auto m = maximal_function(ones(64), one, one, TimeScale{2.0, 1, 16}, 1, -1);
    for (std::int64_t x = 16; x <= j - 16; ++x) CHECK(m.values[x] == doctest::Approx(1.0));
    CHECK(m.weak_type >= 33.0);
    CHECK(m.empirical_constant == doctest::Approx(m.weak_type / 65.0));
  }

  TEST_CASE("wwdkbsz statistic") {
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
    CHECK_FALSE(is_prime(1));
    const std::vector<Complex> one(3 * 100 + 1, 1.0);
    CHECK(wwdkbsz_statistic(one, 2, 3, 100).value == doctest::Approx(1.0));
    // eigenfunctions of a rotation turn the product into a linear phase, caught by the sup over t
    const auto r = DynSystem::rotation();
    const auto orbit_r = sample_observable(r, Observable::trig(1), r.seeded_point(4), 1, 3 * (1 << 10) + 1);
    CHECK(wwdkbsz_statistic(orbit_r, 2, 3, 1 << 10, 8, true).value == doctest::Approx(1.0).epsilon(1e-3));
    const auto d = DynSystem::doubling(4);
    const auto orbit_d = sample_observable(d, Observable::trig(1), d.seeded_point(4), 1, 3 * (1 << 14) + 1);
    const double coarse = wwdkbsz_statistic(orbit_d, 2, 3, 1 << 10).value;
    const double fine = wwdkbsz_statistic(orbit_d, 2, 3, 1 << 14).value;
    CHECK(fine < coarse);
    CHECK(fine < 0.05);
    CHECK_THROWS_AS(wwdkbsz_statistic(one, 2, 4, 10), PreconditionError);
    CHECK_THROWS_AS(wwdkbsz_statistic(one, 2, 3, 200), RangeError);
  }

  TEST_CASE("orthogonality criterion as an implication") {
    const auto d = DynSystem::doubling(99);
    const std::int64_t n = 1 << 10;
    const auto orbit_f = sample_observable(d, Observable::trig(1), d.seeded_point(1), 1, 60 * n);
    const auto mu = mobius_sieve(n);
    const auto rep = wwkbsz_criterion_check(mu, orbit_f, 0.3, n, 50);
    CHECK(rep.summary["holds"].get<bool>());
    CHECK(rep.summary["prime_range_complete"].get<bool>());
    CHECK(rep.rows.size() == 36);  // nine primes below e^{10/3}
    const auto capped = wwkbsz_criterion_check(mu, orbit_f, 0.1, n, 50);
    CHECK_FALSE(capped.summary["prime_range_complete"].get<bool>());
    CHECK_THROWS_AS(wwkbsz_criterion_check(mu, orbit_f, 1.5, n, 50), PreconditionError);
  }

  TEST_CASE("uniform Wiener-Wintner averages") {
    const std::vector<Complex> one(600, 1.0);
    CHECK(ww_uniform_average(one, one, 1, 2, 200).value == doctest::Approx(1.0));
    // a single function against its U2 norm on [1, N]
    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
      const auto n = rng.integer(2, 512);
      auto f = random_signs(rng, static_cast<std::size_t>(n + 1));
      const std::vector<Complex> g(f.size(), 1.0);
      const auto s = ww_uniform_average(f, g, 1, 0, n);
      const std::vector<Complex> tail(f.begin() + 1, f.end());
      REQUIRE(s.value <= gowers_norm_interval(tail, 2).norm + 1e-12);
    }
    const auto sk = DynSystem::skew_product();
    double prev = 2.0;
    for (std::int64_t n : {1 << 8, 1 << 11, 1 << 14}) {
      const auto o = sample_observable(sk, Observable::trig(1), sk.seeded_point(8), 1, n + 1);
      const double v = ww_uniform_average(o, std::vector<Complex>(o.size(), 1.0), 1, 0, n).value;
      CHECK(v < prev);
      prev = v;
    }
    CHECK_THROWS_AS(ww_uniform_average(one, one, 1, 2, 400), RangeError);
  }

  TEST_CASE("Borel-Cantelli summary") {
    const std::int64_t j = 1 << 10;
    const auto mu = mobius_sieve(j);
    Rng rng(6);
    const auto phi = random_signs(rng, j + 1);
    const auto psi = random_signs(rng, j + 1);
    const std::vector<double> deltas{0.5, 0.125, 0.03125};
    const auto r = borel_cantelli_summary(mu, phi, psi, 1, -1, deltas, j);
    CHECK(r.rows.size() == 3);
    CHECK(r.at(0, "delta") == 0.5);
    CHECK(r.at(0, "N0") == 4.0);
    CHECK(r.at(2, "N0") == 64.0);
    CHECK(r.summary["mean_decreasing_in_delta"].get<bool>());
    CHECK_THROWS_AS(borel_cantelli_summary(mu, phi, psi, 1, -1, std::vector<double>{0.3}, j), PreconditionError);
  }

  TEST_CASE("decomposition bound") {
    Rng rng(1);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 300;
      std::vector<Complex> f(n + 1), g(n + 1), f1(n + 1), g1(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        f[i] = rng.disc();
        g[i] = rng.disc();
        f1[i] = 0.5 * rng.disc();
        g1[i] = 0.5 * rng.disc();
      }
      REQUIRE(decomposition_bound_check(mobius_sieve(n), f, g, f1, g1, n).summary["holds"].get<bool>());
    }
  }
}
