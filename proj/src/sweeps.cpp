#include "ergolab/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "ergolab/arith_seq.hpp"
#include "ergolab/averages.hpp"
#include "ergolab/error.hpp"
#include "ergolab/kernels.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/partition.hpp"
#include "ergolab/random.hpp"

namespace ergolab {

namespace {

// Large sieve: sum over 1/J-separated points of |P0|^2 <= (2J - 1) sum |psi|^2,
// so |E0| delta^2 < 2 whenever every kept point has |P0| > delta J.
constexpr double kLargeSieveB2 = 2.0;

struct Trial {
  std::vector<std::vector<double>> rows;
  double statistic = 0.0;
  bool violation = false;
};

struct Sweep {
  std::vector<std::string> columns;
  Json params;
  std::function<Trial(std::int64_t, Rng&)> run;
};

std::vector<Complex> random_disc(Rng& rng, std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& c : v) c = rng.disc();
  return v;
}

std::vector<Complex> random_signs(Rng& rng, std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& c : v) c = rng.sign();
  return v;
}

using Cells = std::vector<std::pair<std::int64_t, std::int64_t>>;

Cells equal_cells(std::int64_t len, std::int64_t cell) {
  Cells out;
  for (std::int64_t a = 0; a < len; a += cell) out.emplace_back(a, a + cell - 1);
  return out;
}

Sweep lp_sweep(bool localized) {
  const std::int64_t len = 256;
  const double r = 16.0, d = 2.0, eps = 1.0 / 16.0;
  const std::int64_t cell = localized ? 8 : 64;
  Sweep s;
  s.columns = {"trial", "lhs", "rhs_main", "excess", "budget", "C_hat", "trivial_excess"};
  s.params = {{"interval_length", len}, {"cells", len / cell}, {"points", 8}, {"R", r}, {"D", d}};
  if (localized) s.params["epsilon"] = eps;
  s.run = [=](std::int64_t t, Rng& rng) {
    const TrigPolynomial p(0, random_disc(rng, static_cast<std::size_t>(len)));
    std::vector<double> pts(8);
    for (auto& x : pts) x = rng.uniform();
    const FrequencySet e(pts);
    const Cells cells = equal_cells(len, cell);
    const auto rep = localized ? lp_lemma_check(p, cells, e, r, d, eps) : lp_lemma_check(p, cells, e, r, d);
    const Cells whole{{0, len - 1}};
    const double trivial = lp_lemma_check(p, whole, e, r, d).summary["excess"].get<double>();
    const auto& sm = rep.summary;
    Trial out;
    out.statistic = sm["C_hat"].get<double>();
    out.violation = trivial != 0.0;
    out.rows.push_back({static_cast<double>(t), sm["lhs"].get<double>(), sm["rhs_main"].get<double>(),
                        sm["excess"].get<double>(), sm["budget"].get<double>(), out.statistic, trivial});
    return out;
  };
  return s;
}

Sweep bmz_sweep() {
  Sweep s;
  s.columns = {"trial", "J", "delta", "size", "normalized_size", "separated", "contained"};
  s.params = {{"J", {128, 512}}, {"delta", {0.1, 0.2, 0.4}}, {"psi", "signs, unit phases, three-phase mixtures"}};
  s.run = [](std::int64_t t, Rng& rng) {
    Trial out;
    for (const std::int64_t j : {std::int64_t{128}, std::int64_t{512}}) {
      const auto n = static_cast<std::size_t>(j);
      std::vector<Complex> psi;
      switch (t % 3) {
        case 0:
          psi = random_signs(rng, n);
          break;
        case 1:
          psi.resize(n);
          for (auto& c : psi) c = rng.unit_complex();
          break;
        default: {
          const double b[3] = {rng.uniform(), rng.uniform(), rng.uniform()};
          psi.resize(n);
          for (std::size_t i = 0; i < n; ++i) {
            Complex v = 0.0;
            for (double beta : b) v += cis_turns(frac_product(static_cast<std::int64_t>(i + 1), beta));
            psi[i] = v / 3.0;
          }
        }
      }
      for (const double delta : {0.1, 0.2, 0.4}) {
        const auto lv = large_value_set(psi, delta);
        out.statistic = std::max(out.statistic, lv.normalized_size);
        if (!lv.separated || !lv.contained || lv.normalized_size > kLargeSieveB2) out.violation = true;
        out.rows.push_back({static_cast<double>(t), static_cast<double>(j), delta,
                            static_cast<double>(lv.points.size()), lv.normalized_size, lv.separated ? 1.0 : 0.0,
                            lv.contained ? 1.0 : 0.0});
      }
    }
    return out;
  };
  return s;
}

Sweep lambda_sweep() {
  const int s_param = 4, j_max = 8;
  Sweep s;
  s.columns = {"trial", "lhs", "f_l2", "C_hat"};
  s.params = {{"K", 8}, {"s", s_param}, {"j_max", j_max}, {"f_support_length", 64}};
  s.run = [=](std::int64_t t, Rng& rng) {
    // dyadic offsets keep the gaps exactly 1/8 after reduction mod 1
    const double offset = static_cast<double>(rng.integer(0, 1023)) / 8192.0;
    std::vector<double> pts;
    for (int k = 0; k < 8; ++k) pts.push_back(offset + k / 8.0);
    const std::int64_t lo = rng.integer(-64, 0);
    const TrigPolynomial f(lo, random_disc(rng, 64));
    const auto rep = lambda_separated_check(FrequencySet(pts), f, s_param, j_max);
    Trial out;
    out.statistic = rep.summary["C_hat"].get<double>();
    out.rows.push_back({static_cast<double>(t), rep.summary["lhs"].get<double>(), f.l2_norm(), out.statistic});
    return out;
  };
  return s;
}

Sweep entropy_sweep() {
  const double tau = 0.125, t_radius = 0.25;
  const std::int64_t n_max = 64, len = 1024;
  Sweep s;
  s.columns = {"trial", "sum_count", "f_l2_squared", "C_hat"};
  s.params = {{"K", 4}, {"tau", tau}, {"N_max", n_max}, {"t", t_radius}, {"f_length", len}};
  s.run = [=](std::int64_t t, Rng& rng) {
    const double offset = static_cast<double>(rng.integer(0, 1023)) / 4096.0;
    std::vector<double> pts;
    for (int k = 0; k < 4; ++k) pts.push_back(offset + k / 4.0);
    const auto f = random_signs(rng, static_cast<std::size_t>(len));
    const auto rep = entropy_gamma_check(f, FrequencySet(pts), tau, n_max, t_radius);
    Trial out;
    out.statistic = rep.summary["C_hat"].get<double>();
    out.rows.push_back({static_cast<double>(t), rep.summary["sum_count"].get<double>(),
                        rep.summary["f_l2_squared"].get<double>(), out.statistic});
    return out;
  };
  return s;
}

Sweep sigma_sweep() {
  const int levels = 20;
  Sweep s;
  s.columns = {"trial", "t", "sum", "deviation"};
  s.params = {{"levels", levels}};
  s.run = [=](std::int64_t t, Rng& rng) {
    // sum over delta = 2^-1 .. 2^-levels equals 1 on [2^{1-levels}, 1]
    const double lo = std::ldexp(1.0, 1 - levels);
    const double x = lo + (1.0 - lo) * rng.uniform();
    double sum = 0.0;
    for (int k = 1; k <= levels; ++k) sum += sigma_delta(std::ldexp(1.0, -k), x);
    Trial out;
    out.statistic = std::abs(sum - 1.0);
    out.violation = out.statistic > 1e-12;
    out.rows.push_back({static_cast<double>(t), x, sum, out.statistic});
    return out;
  };
  return s;
}

Sweep smooth_vdp_sweep() {
  const double d = 2.0;
  Sweep s;
  s.columns = {"trial", "n", "gamma", "M", "lhs", "ratio"};
  s.params = {{"n", {256, 1024}}, {"gamma", {0.02, 0.09}}, {"M_gamma", {1.05, 4.0}}, {"D", d}};
  s.run = [=](std::int64_t t, Rng& rng) {
    const std::int64_t n = rng.integer(256, 1024);
    const double gamma = rng.uniform(0.02, 0.09);
    const double m = rng.uniform(1.05, 4.0) / gamma;
    const auto rep = smooth_vdp_tail_check(n, gamma, m, d);
    Trial out;
    out.statistic = rep.summary["ratio"].get<double>();
    out.rows.push_back({static_cast<double>(t), static_cast<double>(n), gamma, m, rep.summary["lhs"].get<double>(),
                        out.statistic});
    return out;
  };
  return s;
}

Sweep weak_type_sweep() {
  const std::int64_t j = 512;
  Sweep s;
  s.columns = {"trial", "weak_type", "phi_l2", "psi_l2", "C"};
  s.params = {{"J", j}, {"weight", "mobius"}, {"a", 1}, {"b", -1}, {"times", "dyadic"}};
  s.run = [=](std::int64_t t, Rng& rng) {
    static const WeightSequence mu = mobius_sieve(j);
    const auto phi = random_signs(rng, static_cast<std::size_t>(j + 1));
    const auto psi = random_signs(rng, static_cast<std::size_t>(j + 1));
    const auto m = maximal_function(mu, phi, psi, TimeScale{2.0, 1, j}, 1, -1);
    Trial out;
    out.statistic = m.empirical_constant;
    out.rows.push_back({static_cast<double>(t), m.weak_type, m.phi_l2, m.psi_l2, m.empirical_constant});
    return out;
  };
  return s;
}

Sweep make_sweep(const std::string& which) {
  if (which == "lp") return lp_sweep(false);
  if (which == "lp-eps") return lp_sweep(true);
  if (which == "bmz") return bmz_sweep();
  if (which == "lambda") return lambda_sweep();
  if (which == "entropy") return entropy_sweep();
  if (which == "sigma") return sigma_sweep();
  if (which == "smooth-vdp") return smooth_vdp_sweep();
  if (which == "weak-type") return weak_type_sweep();
  throw PreconditionError("unknown lemma '" + which + "'");
}

}  // namespace

const std::vector<std::string>& lemma_names() {
  static const std::vector<std::string> names{"lp",    "lp-eps", "bmz",        "lambda",
                                              "entropy", "sigma", "smooth-vdp", "weak-type"};
  return names;
}

std::int64_t default_trials(const std::string& which) {
  static const std::map<std::string, std::int64_t> t{{"lp", 200},    {"lp-eps", 200}, {"bmz", 100},
                                                     {"lambda", 50}, {"entropy", 50}, {"sigma", 1000},
                                                     {"smooth-vdp", 100}, {"weak-type", 50}};
  const auto it = t.find(which);
  if (it == t.end()) throw PreconditionError("unknown lemma '" + which + "'");
  return it->second;
}

bool has_fixture(const std::string& which) {
  default_trials(which);
  return which != "sigma";
}

ExperimentReport lemma_sweep(const std::string& which, std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) throw PreconditionError("lemma_sweep: trials must be positive");
  const Sweep sweep = make_sweep(which);
  std::vector<Trial> results(static_cast<std::size_t>(trials));
  parallel_for(results.size(), [&](std::size_t i) {
    Rng rng = Rng::fork(seed, i);
    results[i] = sweep.run(static_cast<std::int64_t>(i), rng);
  });
  ExperimentReport rep("lemma_" + which, sweep.columns);
  rep.header["tool_version"] = kToolVersion;
  rep.header["lemma"] = which;
  rep.header["seed"] = seed;
  rep.header["trials"] = trials;
  rep.header["params"] = sweep.params;
  double worst = 0.0;
  std::int64_t violations = 0;
  for (auto& r : results) {
    for (auto& row : r.rows) rep.add_row(std::move(row));
    worst = std::max(worst, r.statistic);
    if (r.violation) ++violations;
  }
  rep.summary["empirical_constant"] = worst;
  rep.summary["violations"] = violations;
  if (which == "bmz") rep.summary["frozen_constant"] = kLargeSieveB2;
  return rep;
}

Fixture fixture_from_sweep(const ExperimentReport& report) {
  Fixture f;
  f.lemma = report.header.at("lemma").get<std::string>();
  if (!has_fixture(f.lemma)) throw PreconditionError("lemma '" + f.lemma + "' has no frozen constant");
  f.params = report.header.at("params");
  f.params["trials"] = report.header.at("trials");
  f.seed = report.header.at("seed").get<std::uint64_t>();
  f.empirical_constant = report.summary.at("empirical_constant").get<double>();
  if (report.summary.contains("frozen_constant")) {
    f.params["sweep_maximum"] = f.empirical_constant;
    f.empirical_constant = report.summary["frozen_constant"].get<double>();
  }
  return f;
}

FixtureComparison compare_to_fixture(const ExperimentReport& report, const Fixture& fixture) {
  FixtureComparison c;
  Json mine = report.header.at("params");
  Json theirs = fixture.params;
  theirs.erase("trials");
  theirs.erase("sweep_maximum");
  c.params_match = fixture.lemma == report.header.at("lemma").get<std::string>() && mine == theirs;
  c.frozen = fixture.empirical_constant;
  c.observed = report.summary.at("empirical_constant").get<double>();
  c.limit = kFixtureTolerance * c.frozen;
  c.ok = c.params_match && c.observed <= c.limit;
  return c;
}

}  // namespace ergolab
