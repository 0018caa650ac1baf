#include <doctest.h>

#include <cmath>

#include "ergolab/arith_seq.hpp"
#include "ergolab/error.hpp"
#include "ergolab/gowers.hpp"
#include "ergolab/random.hpp"
#include "oracles.hpp"

using namespace ergolab;

namespace {

std::vector<Complex> random_values(Rng& rng, std::int64_t m, bool signs) {
  std::vector<Complex> v(static_cast<std::size_t>(m));
  for (auto& x : v) x = signs ? Complex(rng.sign()) : rng.disc();
  return v;
}

std::vector<Complex> quadratic_phase(std::int64_t m) {
  std::vector<Complex> v(static_cast<std::size_t>(m));
  for (std::int64_t x = 0; x < m; ++x) v[x] = cis_turns(static_cast<double>(x * x % m) / static_cast<double>(m));
  return v;
}

double oracle_norm(const std::vector<Complex>& f, int d) {
  const std::vector<std::vector<Complex>> fam(std::size_t{1} << d, f);
  return std::pow(std::max(0.0, oracle::gowers_inner(fam, d).real()), 1.0 / static_cast<double>(1 << d));
}

}  // namespace

TEST_SUITE("gowers") {
  TEST_CASE("inner product examples") {
    const CyclicSequence one(std::vector<Complex>(12, 1.0));
    for (int d : {1, 2, 3}) {
      const std::vector<CyclicSequence> fam(std::size_t{1} << d, one);
      CHECK(std::abs(gowers_inner(fam, d) - Complex(1.0)) < 1e-14);
    }
    std::vector<Complex> delta(10, 0.0);
    delta[0] = 1.0;
    const std::vector<CyclicSequence> dfam(4, CyclicSequence(delta));
    CHECK(gowers_inner(dfam, 2).real() == doctest::Approx(1e-3).epsilon(1e-14));
    const auto q = quadratic_phase(17);
    const std::vector<CyclicSequence> qfam(4, CyclicSequence(q));
    const std::vector<std::vector<Complex>> qraw(4, q);
    CHECK(std::abs(gowers_inner(qfam, 2) - oracle::gowers_inner(qraw, 2)) < 1e-12);

    const std::vector<CyclicSequence> bad{one, one, one, CyclicSequence(std::vector<Complex>(5, 1.0))};
    CHECK_THROWS_AS(gowers_inner(bad, 2), ShapeError);
    CHECK_THROWS_AS(gowers_inner(std::vector<CyclicSequence>(3, one), 2), ShapeError);
    CHECK_THROWS_AS(CyclicSequence(std::vector<Complex>{}), DegenerateError);
  }

  TEST_CASE("norm examples") {
    CHECK(gowers_norm_cyclic(CyclicSequence(std::vector<Complex>(9, 1.0)), 2).norm == doctest::Approx(1.0));
    for (std::int64_t m : {5, 16, 31}) {
      std::vector<Complex> delta(static_cast<std::size_t>(m), 0.0);
      delta[0] = 1.0;
      const auto r = gowers_norm_cyclic(CyclicSequence(delta), 2);
      CHECK(r.norm == doctest::Approx(std::pow(static_cast<double>(m), -0.75)).epsilon(1e-12));
      CHECK(r.method == "fourier");
    }
    const auto r1 = gowers_norm_cyclic(CyclicSequence({1.0, -1.0, 1.0, 1.0}), 1);
    CHECK(r1.norm == doctest::Approx(0.5));
    CHECK_THROWS_AS(gowers_norm_cyclic(CyclicSequence({1.0}), 0), PreconditionError);
  }

  TEST_CASE("agreement with the brute-force sum") {
    Rng rng(31337);
    for (int t = 0; t < 200; ++t) {
      const auto m = rng.integer(1, 32);
      const int d = 2 + t % 2;
      const auto v = random_values(rng, m, t % 4 < 2);
      const auto r = gowers_norm_cyclic(CyclicSequence(v), d);
      REQUIRE(std::abs(r.norm - oracle_norm(v, d)) < 1e-10);
    }
  }

  TEST_CASE("U2 Fourier identity") {
    Rng rng(77);
    for (std::int64_t m : {1, 2, 3, 64, 100, 257, 1024}) {
      const auto r = gowers_norm_cyclic(CyclicSequence(random_values(rng, m, false)), 2);
      REQUIRE(std::isfinite(r.cross_check));
      CHECK(std::abs(r.raw_power - r.cross_check) < 1e-10);
    }
  }

  TEST_CASE("monotone in d, nonnegative, shift invariant, triangle inequality") {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
      const auto m = rng.integer(2, 40);
      const auto v = random_values(rng, m, t % 2 == 0);
      const auto w = random_values(rng, m, false);
      const CyclicSequence f(v), g(w);
      const double u1 = gowers_norm_cyclic(f, 1).norm, u2 = gowers_norm_cyclic(f, 2).norm,
                   u3 = gowers_norm_cyclic(f, 3).norm;
      REQUIRE(u1 <= u2 + 1e-12);
      REQUIRE(u2 <= u3 + 1e-12);
      REQUIRE(gowers_norm_cyclic(f, 2).raw_power >= -1e-15);

      const auto s = rng.integer(1, m - 1);
      std::vector<Complex> shifted(v.size());
      for (std::int64_t x = 0; x < m; ++x) shifted[x] = f(x + s);
      for (int d : {2, 3}) {
        REQUIRE(gowers_norm_cyclic(CyclicSequence(shifted), d).norm ==
                doctest::Approx(gowers_norm_cyclic(f, d).norm).epsilon(1e-13));
      }

      std::vector<Complex> sum(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) sum[i] = v[i] + w[i];
      for (int d : {2, 3}) {
        REQUIRE(gowers_norm_cyclic(CyclicSequence(sum), d).norm <=
                gowers_norm_cyclic(f, d).norm + gowers_norm_cyclic(g, d).norm + 1e-12);
      }
    }
  }

  TEST_CASE("discrete derivatives") {
    const auto one = discrete_derivative(CyclicSequence(std::vector<Complex>(7, 1.0)), 3);
    for (auto v : one.values()) CHECK(v == Complex(1.0));
    const std::int64_t m = 23;
    std::vector<Complex> lin(m), quad(m);
    for (std::int64_t x = 0; x < m; ++x) {
      lin[x] = cis_turns(static_cast<double>(x) / m);
      quad[x] = cis_turns(static_cast<double>(x * x % m) / m);
    }
    const auto dl = discrete_derivative(CyclicSequence(lin), 5);
    for (auto v : dl.values()) CHECK(std::abs(v - cis_turns(5.0 / m)) < 1e-14);
    for (std::int64_t h1 = 0; h1 < m; h1 += 4) {
      for (std::int64_t h2 = 0; h2 < m; h2 += 3) {
        const auto dd = discrete_derivative(discrete_derivative(CyclicSequence(quad), h1), h2);
        // d_{h1} d_{h2} e(x^2/M) = e(2 h1 h2 / M)
        const Complex expect = cis_turns(static_cast<double>(2 * h1 * h2 % m) / m);
        for (auto v : dd.values()) REQUIRE(std::abs(v - expect) < 1e-13);
      }
    }
  }

  TEST_CASE("phase invariance") {
    Rng rng(11);
    const CyclicSequence f(random_values(rng, 48, false));
    const std::vector<std::int64_t> none;
    CHECK(phase_invariance_check(f, none, 2).summary["difference"].get<double>() == 0.0);
    // U^d sees through phases of degree d - 1
    for (int t = 0; t < 50; ++t) {
      const auto m = rng.integer(2, 64);
      const CyclicSequence g(random_values(rng, m, t % 2 == 0));
      const std::vector<std::int64_t> lin{rng.integer(0, m - 1), rng.integer(0, m - 1)};
      REQUIRE(phase_invariance_check(g, lin, 2).summary["difference"].get<double>() <= 1e-10);
      const std::vector<std::int64_t> quad{rng.integer(0, m - 1), rng.integer(0, m - 1), rng.integer(0, m - 1)};
      REQUIRE(phase_invariance_check(g, quad, 3).summary["difference"].get<double>() <= 1e-10);
    }
    // but not through degree d: ||e(x^2/M)||_{U^2} = M^{-1/4} for prime M
    const std::vector<std::int64_t> square{0, 0, 1};
    const auto r = phase_invariance_check(CyclicSequence(std::vector<Complex>(31, 1.0)), square, 2);
    CHECK(r.summary["norm_f"].get<double>() == doctest::Approx(1.0));
    CHECK(r.summary["norm_modulated"].get<double>() == doctest::Approx(std::pow(31.0, -0.25)).epsilon(1e-12));
    const std::vector<std::int64_t> cubic{0, 0, 0, 1};
    CHECK(phase_invariance_check(f, cubic, 2).summary["difference"].get<double>() > 1e-6);
  }

  TEST_CASE("interval norms") {
    CHECK(gowers_norm_interval(std::vector<Complex>(50, 1.0), 2).norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gowers_norm_interval(std::vector<Complex>(20, 1.0), 3).norm == doctest::Approx(1.0).epsilon(1e-12));
    for (double alpha : {0.1, std::sqrt(2.0), 0.377}) {
      std::vector<Complex> f(100);
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = cis_turns(frac_product(static_cast<std::int64_t>(i + 1), alpha));
      CHECK(gowers_norm_interval(f, 2).norm == doctest::Approx(1.0).epsilon(1e-10));
    }
    const auto tm = automatic_sequence(AutomaticKind::thue_morse, 1 << 12);
    double prev2 = 2.0, prev3 = 2.0;
    for (std::int64_t n : {1 << 6, 1 << 8, 1 << 10}) {
      std::vector<Complex> f(tm.values().begin() + 1, tm.values().begin() + 1 + n);
      const double u2 = gowers_norm_interval(f, 2).norm, u3 = gowers_norm_interval(f, 3).norm;
      CHECK(u2 < prev2);
      CHECK(u3 < prev3);
      prev2 = u2;
      prev3 = u3;
    }
    std::vector<Complex> big(tm.values().begin() + 1, tm.values().begin() + 1 + (1 << 12));
    CHECK(gowers_norm_interval(big, 2).norm < prev2);
  }

  TEST_CASE("linear phases are controlled by U2") {
    const auto one = linear_phase_sup_bound(std::vector<Complex>(64, 1.0));
    CHECK(one.summary["lhs"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.summary["rhs"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.summary["holds"].get<bool>());
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
      const auto v = random_values(rng, rng.integer(2, 256), true);
      REQUIRE(linear_phase_sup_bound(v).summary["holds"].get<bool>());
    }
    const auto mu = mobius_sieve(1 << 14);
    std::vector<Complex> f(mu.values().begin(), mu.values().end());
    f.resize(1 << 14);
    const auto r = linear_phase_sup_bound(f);
    CHECK(r.summary["holds"].get<bool>());
    CHECK(r.summary["rhs"].get<double>() < 0.2);
    CHECK_THROWS_AS(linear_phase_sup_bound(std::vector<Complex>(1, 1.0)), PreconditionError);
  }

  TEST_CASE("Cauchy-Schwarz-Gowers") {
    Rng rng(8);
    const CyclicSequence f(random_values(rng, 20, false));
    const auto eq = cbs_gowers_check(std::vector<CyclicSequence>(4, f), 2);
    CHECK(eq.summary["lhs"].get<double>() == doctest::Approx(eq.summary["rhs"].get<double>()).epsilon(1e-12));
    std::vector<CyclicSequence> withzero(8, f);
    withzero[5] = CyclicSequence(std::vector<Complex>(20, 0.0));
    const auto z = cbs_gowers_check(withzero, 3);
    CHECK(z.summary["lhs"].get<double>() == 0.0);
    CHECK(z.summary["rhs"].get<double>() == 0.0);
    for (int t = 0; t < 200; ++t) {
      const int d = 2 + t % 2;
      const auto m = rng.integer(1, 32);
      std::vector<CyclicSequence> fam;
      for (int c = 0; c < (1 << d); ++c) fam.emplace_back(random_values(rng, m, c % 2 == 0));
      REQUIRE(cbs_gowers_check(fam, d).summary["holds"].get<bool>());
    }
  }

  TEST_CASE("empirical GHK seminorms") {
    const std::vector<Complex> constant(400, Complex(0.6, -0.8));
    for (int k : {1, 2, 3}) {
      CHECK(ghk_seminorm_empirical(constant, k, 50).value == doctest::Approx(1.0).epsilon(1e-12));
    }
    const double alpha = (std::sqrt(5.0) - 1.0) / 2.0;
    std::vector<Complex> rot(1000);
    for (std::size_t l = 0; l < rot.size(); ++l) rot[l] = cis_turns(frac_product(static_cast<std::int64_t>(l), alpha));
    const auto g1 = ghk_seminorm_empirical(rot, 1, 10);
    CHECK(g1.value == doctest::Approx(oracle::geometric_mean_modulus(alpha, 1000)).epsilon(1e-10));
    CHECK(g1.value < 0.01);
    // a rotation eigenfunction has |||f|||_2 = 1
    CHECK(ghk_seminorm_empirical(rot, 2, 100).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(ghk_seminorm_empirical(rot, 2, 251), PreconditionError);
    CHECK_THROWS_AS(ghk_seminorm_empirical(rot, 0, 10), PreconditionError);
    CHECK_THROWS_AS(ghk_seminorm_empirical(rot, 2, 0), PreconditionError);
  }
}
