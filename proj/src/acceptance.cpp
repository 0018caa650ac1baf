#include "ergolab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>

#include "ergolab/arith_seq.hpp"
#include "ergolab/averages.hpp"
#include "ergolab/dynamics.hpp"
#include "ergolab/error.hpp"
#include "ergolab/fft.hpp"
#include "ergolab/fixtures.hpp"
#include "ergolab/gowers.hpp"
#include "ergolab/kernels.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/partition.hpp"
#include "ergolab/random.hpp"
#include "ergolab/spectra.hpp"
#include "ergolab/sweeps.hpp"
#include "oracles.hpp"

#ifndef ERGOLAB_DEFAULT_FIXTURE_DIR
#define ERGOLAB_DEFAULT_FIXTURE_DIR "fixtures"
#endif

namespace ergolab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Ctx {
  std::uint64_t seed;
  bool quick;
  std::filesystem::path fixtures;
};

Rng trial_rng(const Ctx& c, int criterion, std::uint64_t trial) {
  return Rng::fork(splitmix64(c.seed + static_cast<std::uint64_t>(criterion)), trial);
}

// seed of a re-run sweep; never the seed the fixture was frozen with
std::uint64_t rerun_seed(const Ctx& c, const Fixture& f) {
  std::uint64_t s = splitmix64(c.seed ^ 0x7E5EEDull);
  if (s == f.seed) ++s;
  return s;
}

std::vector<Complex> disc_values(Rng& rng, std::int64_t n) {
  std::vector<Complex> v(static_cast<std::size_t>(n));
  for (auto& z : v) z = rng.disc();
  return v;
}

std::vector<Complex> sign_values(Rng& rng, std::int64_t n) {
  std::vector<Complex> v(static_cast<std::size_t>(n));
  for (auto& z : v) z = rng.sign();
  return v;
}

void runtime_fields(Json& d, double elapsed, double limit) {
  d["runtime_limit_s"] = limit;
  d["within_runtime_limit"] = elapsed < limit;
}

// 1. sieves against trial division
Json sieves(const Ctx& c, bool& ok) {
  const auto t0 = Clock::now();
  const std::int64_t n = c.quick ? 10000 : 100000;
  const auto mu = mobius_sieve(n);
  const auto lam = liouville_sieve(n);
  std::int64_t mu_bad = 0, lam_bad = 0, id_bad = 0;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (mu[k] != Complex(oracle::mobius(k))) ++mu_bad;
    if (lam[k] != Complex(oracle::liouville(k))) ++lam_bad;
    double s = 0.0;
    for (std::int64_t d = 1; d * d <= k; ++d) {
      if (k % (d * d) == 0) s += mu[k / (d * d)].real();
    }
    if (s != lam[k].real()) ++id_bad;
  }
  const double elapsed = seconds_since(t0);
  Json d{{"n", n}, {"mobius_mismatches", mu_bad}, {"liouville_mismatches", lam_bad}, {"identity_failures", id_bad}};
  runtime_fields(d, elapsed, 10.0);
  ok = mu_bad == 0 && lam_bad == 0 && id_bad == 0 && elapsed < 10.0;
  return d;
}

// 2. Gowers norms against the literal average
Json gowers_oracle(const Ctx& c, bool& ok) {
  const auto t0 = Clock::now();
  const int trials = 200;
  std::vector<double> err(trials);
  parallel_for(trials, [&](std::size_t t) {
    Rng rng = trial_rng(c, 2, t);
    const int d = 2 + static_cast<int>(t % 2);
    const std::int64_t m = rng.integer(1, 32);
    const auto v = disc_values(rng, m);
    const double lib = gowers_norm_cyclic(CyclicSequence(v), d).raw_power;
    const std::vector<std::vector<Complex>> family(std::size_t{1} << d, v);
    err[t] = std::abs(lib - oracle::gowers_inner(family, d).real());
  });
  const double direct_err = *std::max_element(err.begin(), err.end());

  std::vector<std::int64_t> moduli{1, 2, 3, 1024};
  Rng pick = trial_rng(c, 2, 1000);
  for (int i = 0; i < (c.quick ? 6 : 40); ++i) moduli.push_back(pick.integer(1, 1024));
  std::vector<double> u2err(moduli.size());
  parallel_for(moduli.size(), [&](std::size_t i) {
    Rng rng = trial_rng(c, 2, 2000 + i);
    const std::int64_t m = moduli[i];
    const auto v = disc_values(rng, m);
    const double fourier = gowers_norm_cyclic(CyclicSequence(v), 2).raw_power;
    double phys = 0.0;
    for (std::int64_t h = 0; h < m; ++h) {
      Complex s = 0.0;
      for (std::int64_t x = 0; x < m; ++x) s += v[static_cast<std::size_t>((x + h) % m)] * std::conj(v[x]);
      phys += std::norm(s / static_cast<double>(m));
    }
    u2err[i] = std::abs(fourier - phys / static_cast<double>(m));
  });
  const double u2_err = *std::max_element(u2err.begin(), u2err.end());
  const double elapsed = seconds_since(t0);
  Json d{{"trials", trials},
         {"max_error_direct", direct_err},
         {"u2_moduli", moduli.size()},
         {"max_error_u2_identity", u2_err},
         {"tolerance", 1e-10}};
  runtime_fields(d, elapsed, 60.0);
  ok = direct_err <= 1e-10 && u2_err <= 1e-10 && elapsed < 60.0;
  return d;
}

// 3. Gowers inequalities
Json gowers_inequalities(const Ctx& c, bool& ok) {
  const int trials = 200;
  std::int64_t cbs_fail = 0, mono_fail = 0, shift_fail = 0, vander_fail = 0;
  std::int64_t phase_fail = 0, phase_low_fail = 0;
  double shift_worst = 0.0, phase_low_worst = 0.0;
  Json counterexample = nullptr;
  for (int t = 0; t < trials; ++t) {
    Rng rng = trial_rng(c, 3, static_cast<std::uint64_t>(t));
    const int d = 2 + t % 2;
    {
      const std::int64_t m = rng.integer(2, d == 2 ? 16 : 8);
      std::vector<CyclicSequence> fam;
      for (int v = 0; v < (1 << d); ++v) fam.emplace_back(disc_values(rng, m));
      if (!cbs_gowers_check(fam, d).summary["holds"].get<bool>()) ++cbs_fail;
    }
    {
      const CyclicSequence f(disc_values(rng, rng.integer(1, 64)));
      const double n2 = gowers_norm_cyclic(f, 2).norm, n3 = gowers_norm_cyclic(f, 3).norm;
      if (n2 > n3 * (1.0 + 1e-12)) ++mono_fail;
    }
    {
      const std::int64_t m = rng.integer(2, 64);
      const auto v = disc_values(rng, m);
      const std::int64_t a = rng.integer(1, m - 1);
      std::vector<Complex> shifted(v.size());
      for (std::int64_t x = 0; x < m; ++x) shifted[x] = v[static_cast<std::size_t>((x + a) % m)];
      const double base = gowers_norm_cyclic(CyclicSequence(v), d).norm;
      const double diff = std::abs(gowers_norm_cyclic(CyclicSequence(shifted), d).norm - base);
      shift_worst = std::max(shift_worst, diff);
      if (diff > 1e-13 * std::max(1.0, base)) ++shift_fail;
    }
    {
      const std::int64_t m = rng.integer(2, 64);
      const CyclicSequence f(disc_values(rng, m));
      // degree up to d, as stated
      const auto deg = rng.integer(0, d);
      std::vector<std::int64_t> num(static_cast<std::size_t>(deg + 1));
      for (auto& a : num) a = rng.integer(0, m - 1);
      num.back() = rng.integer(1, m - 1);
      const double diff = phase_invariance_check(f, num, d).summary["difference"].get<double>();
      if (diff > 1e-10) {
        if (phase_fail == 0) {
          counterexample = {{"M", m}, {"d", d}, {"degree", deg}, {"numerators", num}, {"difference", diff}};
        }
        ++phase_fail;
      }
      // degree up to d - 1
      const auto low = rng.integer(0, d - 1);
      std::vector<std::int64_t> num_low(static_cast<std::size_t>(low + 1));
      for (auto& a : num_low) a = rng.integer(0, m - 1);
      const double diff_low = phase_invariance_check(f, num_low, d).summary["difference"].get<double>();
      phase_low_worst = std::max(phase_low_worst, diff_low);
      if (diff_low > 1e-10) ++phase_low_fail;
    }
    {
      const std::int64_t n = rng.integer(1, 256);
      const auto f = t % 2 ? disc_values(rng, n) : sign_values(rng, n);
      const auto rep = linear_phase_sup_bound(f);
      const auto& s = rep.summary;
      if (s["lhs"].get<double>() + s["lhs_error"].get<double>() > s["rhs"].get<double>()) ++vander_fail;
    }
  }
  Json d{{"trials", trials},
         {"cbs_failures", cbs_fail},
         {"monotonicity_failures", mono_fail},
         {"shift_failures", shift_fail},
         {"shift_max_difference", shift_worst},
         {"shift_tolerance", "1e-13 relative"},
         {"phase_degree_le_d_failures", phase_fail},
         {"phase_degree_le_d_counterexample", counterexample},
         {"phase_degree_le_d_minus_1_failures", phase_low_fail},
         {"phase_degree_le_d_minus_1_max_difference", phase_low_worst},
         {"linear_phase_bound_certified_failures", vander_fail}};
  ok = cbs_fail == 0 && mono_fail == 0 && shift_fail == 0 && phase_fail == 0 && vander_fail == 0;
  return d;
}

// 4. kernel identities
Json kernel_identities(const Ctx& c, bool& ok) {
  Rng rng = trial_rng(c, 4, 0);
  double fejer_err = 0.0;
  for (const std::int64_t n : {8, 64, 512}) {
    const auto coeff = fejer_coefficients(n);
    for (int i = 0; i < 1000; ++i) {
      const double th = rng.uniform(-0.5, 0.5);
      const double direct = oracle::eval_direct(coeff.coeffs(), coeff.lo(), th).real();
      fejer_err = std::max(fejer_err, std::abs(fejer_eval(n, th) - direct));
    }
  }
  double mass_err = 0.0;
  for (const std::int64_t n : {0, 1, 7, 64, 512}) {
    const double integral =
        panel_quadrature([n](double x) { return fejer_eval(n, x); }, -0.5, 0.5, 1.0 / (4.0 * static_cast<double>(n + 1)));
    mass_err = std::max(mass_err, std::abs(integral - 1.0));
  }
  double literal = 0.0, corrected = 0.0;
  for (std::int64_t n = 1; n <= 64; ++n) {
    for (int i = 0; i < 50; ++i) {
      const double th = rng.uniform(-0.5, 0.5);
      const double v = vdp_eval(n, n, th);
      literal = std::max(literal, std::abs(v - (2.0 * fejer_eval(2 * n, th) - fejer_eval(n, th))));
      corrected = std::max(corrected, std::abs(v - (2.0 * fejer_eval(2 * n - 1, th) - fejer_eval(n - 1, th))));
    }
  }
  // V^(j) from exact samples on the 2(n+p)+1 grid
  const std::int64_t cap = c.quick ? 64 : 512;
  std::vector<double> worst(static_cast<std::size_t>(cap), 0.0);
  parallel_for(worst.size(), [&](std::size_t i) {
    const std::int64_t n = static_cast<std::int64_t>(i) + 1;
    for (std::int64_t p = 1; p <= cap; ++p) {
      const std::int64_t g = 2 * (n + p) + 1;
      std::vector<Complex> s(static_cast<std::size_t>(g));
      for (std::int64_t k = 0; k < g; ++k) s[k] = vdp_eval(n, p, static_cast<double>(k) / static_cast<double>(g));
      dft_negative(s);
      for (std::int64_t j = -(n + p); j <= n + p; ++j) {
        const Complex v = s[static_cast<std::size_t>((j + g) % g)] / static_cast<double>(g);
        worst[i] = std::max(worst[i], std::abs(v - vdp_multiplier(n, p, static_cast<double>(j))));
      }
    }
  });
  const double vhat_err = *std::max_element(worst.begin(), worst.end());
  Json d{{"fejer_max_error", fejer_err},
         {"fejer_mass_max_error", mass_err},
         {"vdp_equals_2K2n_minus_Kn_max_error", literal},
         {"vdp_equals_2K2n_minus_Kn_holds", literal <= 1e-10},
         {"vdp_equals_2K2n1_minus_Kn1_max_error", corrected},
         {"vdp_equals_2K2n1_minus_Kn1_holds", corrected <= 1e-10},
         {"vhat_cap", cap},
         {"vhat_max_error", vhat_err},
         {"vhat_tolerance", 1e-12}};
  ok = fejer_err <= 1e-12 && mass_err <= 1e-12 && literal <= 1e-10 && vhat_err <= 1e-12;
  return d;
}

// 5. Bohr-Wiener type bound
Json bw(const Ctx& c, bool& ok) {
  const int trials = 1000;
  std::int64_t violations = 0;
  double worst_ratio = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = trial_rng(c, 5, static_cast<std::uint64_t>(t));
    const std::int64_t len = rng.integer(1, 128);
    std::int64_t lo = rng.integer(-len, 64);
    if (len == 1 && lo == 0) lo = 1;
    auto v = disc_values(rng, len);
    if (lo <= 0 && lo + len > 0) v[static_cast<std::size_t>(-lo)] = 0.0;
    const auto rep = bw_inequality_report(TrigPolynomial(lo, v));
    const auto& s = rep.summary;
    if (s["rhs"].get<double>() > 0.0) worst_ratio = std::max(worst_ratio, s["lhs"].get<double>() / s["rhs"].get<double>());
    if (!s["holds"].get<bool>()) ++violations;
  }
  ok = violations == 0;
  return {{"trials", trials}, {"violations", violations}, {"max_lhs_over_rhs", worst_ratio}};
}

Fixture fixture(const Ctx& c, const std::string& lemma) { return load_fixture(c.fixtures / (lemma + ".json")); }

Json comparison_json(const FixtureComparison& k) {
  return {{"params_match", k.params_match}, {"frozen", k.frozen}, {"observed", k.observed}, {"limit", k.limit}, {"ok", k.ok}};
}

// 6. large value sets
Json bmz(const Ctx& c, bool& ok) {
  const Fixture fx = fixture(c, "bmz");
  const double b2 = fx.empirical_constant;
  const std::int64_t trials = c.quick ? 30 : 100;
  const auto rep = lemma_sweep("bmz", trials, rerun_seed(c, fx));
  std::int64_t sep_fail = 0, size_fail = 0, contain_fail = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const double norm = rep.at(i, "normalized_size");
    worst = std::max(worst, norm);
    if (rep.at(i, "separated") != 1.0) ++sep_fail;
    if (rep.at(i, "contained") != 1.0) ++contain_fail;
    if (norm > b2) ++size_fail;
  }
  ok = sep_fail == 0 && size_fail == 0 && contain_fail == 0;
  return {{"psi_count", trials},
          {"instances", rep.rows.size()},
          {"frozen_B2", b2},
          {"max_normalized_size", worst},
          {"separation_failures", sep_fail},
          {"size_failures", size_fail},
          {"containment_failures", contain_fail}};
}

// 7. LP lemma and its localized form
Json lp(const Ctx& c, bool& ok) {
  Json d = Json::object();
  ok = true;
  for (const std::string which : {"lp", "lp-eps"}) {
    const Fixture fx = fixture(c, which);
    const std::int64_t trials = c.quick ? 50 : default_trials(which);
    const auto rep = lemma_sweep(which, trials, rerun_seed(c, fx));
    const auto cmp = compare_to_fixture(rep, fx);
    double trivial = 0.0;
    for (const double v : rep.column("trivial_excess")) trivial = std::max(trivial, v);
    d[which] = {{"trials", trials}, {"trivial_partition_max_excess", trivial}, {"fixture", comparison_json(cmp)}};
    ok = ok && trivial == 0.0 && cmp.ok;
  }
  return d;
}

// 8. lambda-separated and entropy constants
Json lambda_entropy(const Ctx& c, bool& ok) {
  Json d = Json::object();
  ok = true;
  for (const std::string which : {"lambda", "entropy"}) {
    const Fixture fx = fixture(c, which);
    const std::int64_t trials = c.quick ? 20 : 50;
    const auto cmp = compare_to_fixture(lemma_sweep(which, trials, rerun_seed(c, fx)), fx);
    d[which] = {{"trials", trials}, {"fixture", comparison_json(cmp)}};
    ok = ok && cmp.ok;
  }
  std::int64_t mono_fail = 0, size_fail = 0;
  for (int t = 0; t < 200; ++t) {
    Rng rng = trial_rng(c, 8, static_cast<std::uint64_t>(t));
    std::vector<std::vector<Complex>> pts(static_cast<std::size_t>(rng.integer(1, 40)));
    for (auto& p : pts) p = disc_values(rng, 3);
    std::size_t prev = pts.size();
    for (double r = 0.02; r < 4.0; r *= 1.5) {
      const auto e = entropy_numbers(pts, r);
      if (e.count > pts.size()) ++size_fail;
      if (e.count > prev) ++mono_fail;
      prev = e.count;
    }
  }
  d["entropy_monotonicity_failures"] = mono_fail;
  d["entropy_size_failures"] = size_fail;
  ok = ok && mono_fail == 0 && size_fail == 0;
  return d;
}

// 9. Calderon transfer
Json transfer(const Ctx& c, bool& ok) {
  const std::int64_t top = c.quick ? 1024 : 4096;
  const auto mu = mobius_sieve(top);
  Rng rng = trial_rng(c, 9, 0);
  const std::vector<std::pair<DynSystem, std::pair<Observable, Observable>>> cases{
      {DynSystem::cyclic(997), {Observable::from_table(disc_values(rng, 997)), Observable::from_table(disc_values(rng, 997))}},
      {DynSystem::rotation(), {Observable::trig(1), Observable::trig(3, Complex(0.0, 1.0))}}};
  std::int64_t checked = 0, mismatches = 0;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const auto& [sys, obs] = cases[ci];
    for (const auto& [a, b] : std::vector<std::pair<std::int64_t, std::int64_t>>{{1, -1}, {2, 3}}) {
      for (std::int64_t n = 1; n <= top; n *= 2) {
        const Point x0 = sys.seeded_point(splitmix64(c.seed + static_cast<std::uint64_t>(n) + 31 * ci));
        const auto fs = sample_observable(sys, obs.first, x0, a, n + 1);
        const auto gs = sample_observable(sys, obs.second, x0, b, n + 1);
        const Complex dyn = weighted_bilinear(mu, fs, gs, n);
        const auto t = calderon_transfer(sys, x0, obs.first, obs.second, a, b, n);
        const Complex shift =
            weighted_bilinear(mu, shift_samples(t.phi, t.anchor, a, n), shift_samples(t.psi, t.anchor, b, n), n);
        ++checked;
        if (dyn != shift) ++mismatches;
      }
    }
  }
  ok = mismatches == 0;
  return {{"systems", {"cyclic", "rotation"}}, {"N_max", top}, {"cases", checked}, {"mismatches", mismatches}};
}

// 10. maximal function
Json maximal(const Ctx& c, bool& ok) {
  const auto mu = mobius_sieve(512);
  const std::vector<Complex> nu1(mu.values().begin(), mu.values().end());
  std::int64_t cases = 0, points = 0, mismatches = 0;
  double worst = 0.0;
  for (const std::int64_t j : {16, 64, 128, 256}) {
    for (const auto& [a, b] : std::vector<std::pair<std::int64_t, std::int64_t>>{{1, -1}, {2, 3}, {1, 1}, {-1, 2}}) {
      for (const double rho : {2.0, 1.5}) {
        Rng rng = trial_rng(c, 10, static_cast<std::uint64_t>(cases));
        const auto phi = sign_values(rng, j + 1);
        const auto psi = disc_values(rng, j + 1);
        const auto m = maximal_function(mu, phi, psi, TimeScale{rho, 1, j}, a, b);
        const auto ref = oracle::maximal_brute(nu1, phi, psi, m.times, a, b);
        for (std::size_t i = 0; i < ref.size(); ++i) {
          const double e = std::abs(ref[i] - m.values[i]);
          worst = std::max(worst, e);
          if (e > 1e-12) ++mismatches;
          ++points;
        }
        ++cases;
      }
    }
  }
  ok = mismatches == 0;
  return {{"cases", cases}, {"points", points}, {"mismatches", mismatches}, {"max_difference", worst}, {"tolerance", 1e-12}};
}

struct DecayConfig {
  std::string name;
  WeightSequence nu;
  DynSystem system;
  Observable f, g;
  std::int64_t a, b;
};

std::vector<Point> sample_points(const DynSystem& sys, std::uint64_t seed, int count) {
  std::vector<Point> xs;
  if (sys.kind() == SystemKind::doubling) {
    const Point base = sys.seeded_point(seed);
    for (int s = 0; s < count; ++s) xs.push_back(sys.iterate(base, std::int64_t{1000003} * s));
  } else {
    for (int s = 0; s < count; ++s) xs.push_back(sys.seeded_point(splitmix64(seed + static_cast<std::uint64_t>(s))));
  }
  return xs;
}

Json decay(const DecayConfig& cfg, std::uint64_t seed, std::int64_t nmax) {
  const auto xs = sample_points(cfg.system, seed, 32);
  const auto rep = decay_profile(cfg.nu, cfg.system, xs, cfg.f, cfg.g, cfg.a, cfg.b, TimeScale{2.0, 1024, nmax});
  return {{"a", cfg.a},
          {"b", cfg.b},
          {"system", cfg.system.description()},
          {"N", rep.summary["N"]},
          {"median", rep.summary["median"]},
          {"slope", rep.summary["slope"]}};
}

// 11. bilinear decay trend
Json decay_trend(const Ctx& c, bool& ok) {
  const auto t0 = Clock::now();
  const std::int64_t nmax = c.quick ? (1 << 14) : (1 << 18);
  const auto mu = mobius_sieve(nmax);
  const auto lam = liouville_sieve(nmax);
  const std::vector<DecayConfig> configs{
      {"mobius_rotation", mu, DynSystem::rotation(), Observable::trig(1), Observable::trig(2), 1, -1},
      {"liouville_rotation", lam, DynSystem::rotation(), Observable::trig(1), Observable::trig(2), 1, -1},
      {"mobius_doubling", mu, DynSystem::doubling(splitmix64(c.seed)), Observable::trig(1), Observable::trig(1), 1, 2}};
  Json d = Json::object();
  ok = true;
  for (const auto& cfg : configs) {
    d[cfg.name] = decay(cfg, c.seed, nmax);
    ok = ok && d[cfg.name]["slope"].get<double>() < 0.0;
  }
  const double elapsed = seconds_since(t0);
  runtime_fields(d, elapsed, 300.0);
  ok = ok && elapsed < 300.0;
  return d;
}

// 12. exponential sums of the Mobius function
Json davenport(const Ctx& c, bool& ok) {
  const auto t0 = Clock::now();
  const int top = c.quick ? 16 : 20;
  std::vector<std::int64_t> ns;
  for (int e = 10; e <= top; e += 2) ns.push_back(std::int64_t{1} << e);
  const auto rep = power_sum_profile(mobius_sieve(ns.back()), 1, ns);
  const auto v = rep.column("value"), err = rep.column("error_bound");
  bool decreasing = true;
  for (std::size_t i = 1; i < v.size(); ++i) decreasing = decreasing && v[i] + err[i] < v[i - 1];
  const double elapsed = seconds_since(t0);
  Json d{{"N", ns}, {"value", v}, {"error_bound", err}, {"certified_strictly_decreasing", decreasing}};
  runtime_fields(d, elapsed, 300.0);
  ok = decreasing && elapsed < 300.0;
  return d;
}

// 13. negative control
Json control(const Ctx& c, bool& ok) {
  const std::int64_t nmax = c.quick ? (1 << 14) : (1 << 18);
  const auto ones = WeightSequence::raw(std::vector<Complex>(static_cast<std::size_t>(nmax), 1.0));
  const DecayConfig cfg{"ones", ones, DynSystem::rotation(), Observable::constant(), Observable::constant(), 1, -1};
  Json d = decay(cfg, c.seed, nmax);
  const double slope = d["slope"].get<double>();
  d["bound"] = 0.05;
  ok = std::abs(slope) < 0.05;
  return d;
}

using CriterionFn = Json (*)(const Ctx&, bool&);

const std::vector<std::pair<std::string, CriterionFn>>& criteria() {
  static const std::vector<std::pair<std::string, CriterionFn>> list{
      {"sieve correctness", sieves},
      {"Gowers oracle equivalence", gowers_oracle},
      {"Gowers inequalities", gowers_inequalities},
      {"kernel identities", kernel_identities},
      {"Bohr-Wiener bound", bw},
      {"large value sets", bmz},
      {"LP lemma constants", lp},
      {"lambda-separated and entropy constants", lambda_entropy},
      {"Calderon transfer identity", transfer},
      {"maximal function oracle", maximal},
      {"bilinear decay trend", decay_trend},
      {"Mobius exponential sum trend", davenport},
      {"negative control", control},
      {"determinism", nullptr},
  };
  return list;
}

}  // namespace

bool AcceptanceRun::passed() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& r) { return r.passed; });
}

std::vector<int> AcceptanceRun::failures() const {
  std::vector<int> out;
  for (const auto& r : criteria) {
    if (!r.passed) out.push_back(r.id);
  }
  return out;
}

Json AcceptanceRun::verdict() const {
  Json j;
  j["tool_version"] = kToolVersion;
  j["seed"] = seed;
  j["quick"] = quick;
  j["passed"] = passed();
  j["failed"] = failures();
  j["criteria"] = Json::array();
  for (const auto& r : criteria) {
    j["criteria"].push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"details", r.details}});
  }
  return j;
}

std::filesystem::path default_fixture_dir() {
  if (const char* env = std::getenv("ERGOLAB_FIXTURES"); env && *env) return env;
  return ERGOLAB_DEFAULT_FIXTURE_DIR;
}

const std::vector<std::string>& fixture_files() {
  static const std::vector<std::string> files = [] {
    std::vector<std::string> out;
    for (const auto& n : lemma_names()) {
      if (has_fixture(n)) out.push_back(n + ".json");
    }
    return out;
  }();
  return files;
}

void check_fixtures(const std::filesystem::path& dir) {
  for (const auto& f : fixture_files()) {
    const Fixture fx = load_fixture(dir / f);
    if (fx.lemma + ".json" != f) {
      throw FixtureError("fixture " + (dir / f).string() + ": lemma '" + fx.lemma + "' does not match the file name");
    }
  }
}

std::string criterion_title(int id) {
  if (id < 1 || id > kCriterionCount) throw RangeError("no criterion " + std::to_string(id));
  return criteria()[static_cast<std::size_t>(id - 1)].first;
}

AcceptanceRun run_acceptance(const AcceptanceOptions& options,
                             const std::function<void(const CriterionResult&)>& progress) {
  const Ctx ctx{options.seed, options.quick,
                options.fixture_dir.empty() ? default_fixture_dir() : options.fixture_dir};
  std::vector<int> ids = options.only;
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  }
  AcceptanceRun run;
  run.seed = options.seed;
  run.quick = options.quick;
  for (const int id : ids) {
    CriterionResult r;
    r.id = id;
    r.title = criterion_title(id);
    const auto t0 = Clock::now();
    try {
      if (id == 14) {
        // two quick passes over the other criteria, compared byte for byte
        AcceptanceOptions o{options.seed, true, ctx.fixtures, {}};
        for (int i = 1; i < kCriterionCount; ++i) o.only.push_back(i);
        const std::string first = run_acceptance(o).verdict().dump();
        const std::string second = run_acceptance(o).verdict().dump();
        r.passed = first == second;
        r.details = {{"mode", "quick"}, {"bytes", first.size()}, {"identical", r.passed}};
      } else {
        bool ok = false;
        r.details = criteria()[static_cast<std::size_t>(id - 1)].second(ctx, ok);
        r.passed = ok;
      }
    } catch (const std::exception& e) {
      r.passed = false;
      r.details = {{"error", e.what()}};
    }
    r.seconds = seconds_since(t0);
    if (progress) progress(r);
    run.criteria.push_back(std::move(r));
  }
  return run;
}

}  // namespace ergolab
