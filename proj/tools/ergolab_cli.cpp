// ergolab command-line driver.
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>

#include "ergolab/acceptance.hpp"
#include "ergolab/arith_seq.hpp"
#include "ergolab/averages.hpp"
#include "ergolab/dynamics.hpp"
#include "ergolab/error.hpp"
#include "ergolab/fixtures.hpp"
#include "ergolab/gowers.hpp"
#include "ergolab/kernels.hpp"
#include "ergolab/report.hpp"
#include "ergolab/spectra.hpp"
#include "ergolab/sweeps.hpp"

using namespace ergolab;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFixture = 3;

struct Global {
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string format = "csv";
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double parse_number(const std::string& field, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(field + ": '" + text + "' is not a number");
}

std::vector<Rational> parse_rationals(const std::string& field, const std::string& text) {
  std::vector<Rational> out;
  for (const auto& part : split(text, ',')) {
    const auto pq = split(part, '/');
    try {
      if (pq.size() == 1) {
        out.push_back({std::stoll(pq[0]), 1});
      } else if (pq.size() == 2) {
        out.push_back({std::stoll(pq[0]), std::stoll(pq[1])});
      } else {
        throw std::invalid_argument(part);
      }
    } catch (const std::logic_error&) {
      throw UsageError(field + ": '" + part + "' is not a rational p/q");
    }
    if (out.back().den <= 0) throw UsageError(field + ": denominators must be positive");
  }
  if (out.empty()) throw UsageError(field + ": no coefficients given");
  return out;
}

const std::vector<std::string> kWeightKinds{"mobius",
                                            "liouville",
                                            "thue-morse",
                                            "rudin-shapiro",
                                            "random-multiplicative",
                                            "random-completely-multiplicative",
                                            "polynomial-phase",
                                            "ones"};

WeightSequence make_weight(const std::string& kind, std::int64_t n, std::uint64_t seed, const std::string& coeffs) {
  if (kind == "mobius") return mobius_sieve(n);
  if (kind == "liouville") return liouville_sieve(n);
  if (kind == "thue-morse") return automatic_sequence(AutomaticKind::thue_morse, n);
  if (kind == "rudin-shapiro") return automatic_sequence(AutomaticKind::rudin_shapiro, n);
  if (kind == "random-multiplicative") return random_multiplicative(n, seed, false);
  if (kind == "random-completely-multiplicative") return random_multiplicative(n, seed, true);
  if (kind == "polynomial-phase") return polynomial_phase(parse_rationals("--coeffs", coeffs), n);
  if (kind == "ones") return WeightSequence::raw(std::vector<Complex>(static_cast<std::size_t>(n), 1.0));
  throw UsageError("--weight: unknown sequence kind '" + kind + "'");
}

Observable parse_observable(const std::string& field, const std::string& text) {
  const auto p = split(text, ':');
  if (p.empty()) throw UsageError(field + ": empty observable");
  if (p[0] == "constant" && p.size() <= 2) {
    return Observable::constant(p.size() == 2 ? parse_number(field, p[1]) : 1.0);
  }
  if (p[0] == "trig" && p.size() == 2) return Observable::trig(static_cast<std::int64_t>(parse_number(field, p[1])));
  if (p[0] == "indicator" && p.size() == 3) return Observable::indicator(parse_number(field, p[1]), parse_number(field, p[2]));
  throw UsageError(field + ": expected constant[:c], trig:k or indicator:lo:hi, got '" + text + "'");
}

DynSystem make_system(const std::string& kind, double alpha, std::uint64_t bit_seed, std::int64_t modulus) {
  SystemKind k;
  try {
    k = system_kind_from_string(kind);
  } catch (const Error&) {
    throw UsageError("--system: unknown system '" + kind + "'");
  }
  switch (k) {
    case SystemKind::rotation:
      return DynSystem::rotation(alpha);
    case SystemKind::skew_product:
      return DynSystem::skew_product(alpha);
    case SystemKind::doubling:
      return DynSystem::doubling(bit_seed);
    case SystemKind::cyclic:
      return DynSystem::cyclic(modulus);
  }
  throw UsageError("--system: unsupported");
}

// every option of the subcommand as given or defaulted
Json echo_options(const CLI::App* sub) {
  Json j = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help") continue;
    const auto& res = opt->results();
    if (res.empty()) {
      j[name] = opt->get_default_str();
    } else if (res.size() == 1) {
      j[name] = res.front();
    } else {
      j[name] = res;
    }
  }
  return j;
}

void emit(const Global& g, const CLI::App* sub, ExperimentReport& rep) {
  Json header = Json::object();
  header["tool_version"] = kToolVersion;
  header["subcommand"] = sub->get_name();
  header["seed"] = g.seed;
  header["config"] = echo_options(sub);
  for (auto& [k, v] : rep.header.items()) {
    if (!header.contains(k)) header[k] = v;
  }
  rep.header = header;
  const std::string text = g.format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_csv();
  if (g.out.empty()) {
    std::cout << text;
  } else {
    write_atomic(g.out, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergolab: numerical experiments on weighted ergodic averages"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML configuration file; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  Global g;
  app.add_option("--seed", g.seed, "Run seed")->capture_default_str();
  app.add_option("--out", g.out, "Output file (written atomically); stdout if empty");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  // seq
  auto* seq = app.add_subcommand("seq", "Generate an arithmetic or automatic sequence");
  std::string seq_kind = "mobius", seq_coeffs;
  std::int64_t seq_n = 1000;
  seq->add_option("--kind", seq_kind)->check(CLI::IsMember(kWeightKinds))->capture_default_str();
  seq->add_option("--n", seq_n)->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 32))->capture_default_str();
  seq->add_option("--coeffs", seq_coeffs, "Polynomial coefficients p/q, constant term first");

  // expsum
  auto* expsum = app.add_subcommand("expsum", "Certified sup of weighted exponential sums");
  std::string es_weight = "mobius", es_coeffs;
  int es_k = 1, es_oversample = kDefaultOversample;
  std::vector<std::int64_t> es_n{1 << 10, 1 << 12, 1 << 14, 1 << 16};
  std::int64_t es_short = 0;
  expsum->add_option("--weight", es_weight)->check(CLI::IsMember(kWeightKinds))->capture_default_str();
  expsum->add_option("--coeffs", es_coeffs);
  expsum->add_option("--k", es_k, "Power of n in the phase")->check(CLI::Range(1, 3))->capture_default_str();
  expsum->add_option("--n", es_n, "Sum lengths")->capture_default_str();
  expsum->add_option("--oversample", es_oversample)->check(CLI::Range(4, 64))->capture_default_str();
  expsum->add_option("--short", es_short, "Short interval length M; uses the first N")->capture_default_str();

  // kernel
  auto* kernel = app.add_subcommand("kernel", "Evaluate Fejer and de la Vallee Poussin kernels");
  std::string k_form = "vdp";
  std::int64_t k_n = 64, k_p = 64, k_grid = 1024, k_interval = 0;
  double k_gamma = 0.05, k_tail = 0.0, k_d = 2.0;
  std::string k_fixture;
  kernel->add_option("--form", k_form)->check(CLI::IsMember({"fejer", "vdp", "vdp_smooth"}))->capture_default_str();
  kernel->add_option("--n", k_n)->check(CLI::PositiveNumber)->capture_default_str();
  kernel->add_option("--p", k_p)->check(CLI::PositiveNumber)->capture_default_str();
  kernel->add_option("--gamma", k_gamma)->capture_default_str();
  kernel->add_option("--grid", k_grid, "Number of theta samples in [-1/2, 1/2)")->check(CLI::Range(1, 1 << 22))->capture_default_str();
  kernel->add_option("--tail", k_tail, "Window M for the tail integral (0: none)")->capture_default_str();
  kernel->add_option("--interval", k_interval, "|I| for the vdp tail (0: 2(n+p)+1)")->capture_default_str();
  kernel->add_option("--D", k_d, "Decay exponent of the smoothed tail bound")->capture_default_str();
  kernel->add_option("--fixture", k_fixture, "smooth-vdp fixture supplying C");

  // gowers
  auto* gowers = app.add_subcommand("gowers", "Gowers norms of a sequence");
  std::string g_weight = "mobius", g_coeffs, g_domain = "interval";
  std::int64_t g_n = 256;
  std::vector<int> g_d{2, 3};
  gowers->add_option("--weight", g_weight)->check(CLI::IsMember(kWeightKinds))->capture_default_str();
  gowers->add_option("--coeffs", g_coeffs);
  gowers->add_option("--n", g_n)->check(CLI::PositiveNumber)->capture_default_str();
  gowers->add_option("--d", g_d)->check(CLI::Range(1, 4))->capture_default_str();
  gowers->add_option("--domain", g_domain)->check(CLI::IsMember({"interval", "cyclic"}))->capture_default_str();

  // orbit
  auto* orb = app.add_subcommand("orbit", "Sample an observable along an orbit");
  std::string o_system = "rotation", o_f = "trig:1";
  double o_alpha = kGoldenAlpha;
  std::uint64_t o_bits = 1, o_x0 = 0;
  std::int64_t o_modulus = 97, o_len = 100;
  orb->add_option("--system", o_system)->capture_default_str();
  orb->add_option("--alpha", o_alpha)->capture_default_str();
  orb->add_option("--bit-seed", o_bits)->capture_default_str();
  orb->add_option("--modulus", o_modulus)->capture_default_str();
  orb->add_option("--x0-seed", o_x0)->capture_default_str();
  orb->add_option("--f", o_f)->capture_default_str();
  orb->add_option("--len", o_len)->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 26))->capture_default_str();

  // bilinear
  auto* bil = app.add_subcommand("bilinear", "Decay profile of weighted bilinear averages");
  std::string b_weight = "mobius", b_coeffs, b_system = "rotation", b_f = "trig:1", b_g = "trig:2";
  double b_alpha = kGoldenAlpha, b_rho = 2.0;
  std::uint64_t b_bits = 1;
  std::int64_t b_modulus = 997, b_a = 1, b_b = -1, b_nmin = 1024, b_nmax = 1 << 16;
  int b_points = 32;
  bil->add_option("--weight", b_weight)->check(CLI::IsMember(kWeightKinds))->capture_default_str();
  bil->add_option("--coeffs", b_coeffs);
  bil->add_option("--system", b_system)->capture_default_str();
  bil->add_option("--alpha", b_alpha)->capture_default_str();
  bil->add_option("--bit-seed", b_bits)->capture_default_str();
  bil->add_option("--modulus", b_modulus)->capture_default_str();
  bil->add_option("--a", b_a)->capture_default_str();
  bil->add_option("--b", b_b)->capture_default_str();
  bil->add_option("--nmin", b_nmin)->check(CLI::PositiveNumber)->capture_default_str();
  bil->add_option("--nmax", b_nmax)->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 26))->capture_default_str();
  bil->add_option("--rho", b_rho)->capture_default_str();
  bil->add_option("--points", b_points, "Number of sampled starting points")->check(CLI::Range(1, 4096))->capture_default_str();
  bil->add_option("--f", b_f)->capture_default_str();
  bil->add_option("--g", b_g)->capture_default_str();

  // lemma
  auto* lem = app.add_subcommand("lemma", "Calibration sweep for a lemma constant");
  std::string l_which = "lp", l_fixture;
  std::int64_t l_trials = 0;
  bool l_freeze = false;
  lem->add_option("--which", l_which)->check(CLI::IsMember(lemma_names()))->capture_default_str();
  lem->add_option("--trials", l_trials, "Trial count (0: the calibration default)")->capture_default_str();
  lem->add_option("--fixture", l_fixture, "Fixture to compare against, or to write with --freeze");
  lem->add_flag("--freeze", l_freeze, "Write the sweep's constant to --fixture");

  // verify
  auto* ver = app.add_subcommand("verify", "Run the acceptance suite");
  bool v_quick = false;
  std::string v_fixtures;
  ver->add_flag("--quick", v_quick, "Reduced sizes");
  ver->add_option("--fixtures", v_fixtures, "Fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  try {
    if (sub == seq) {
      const auto w = make_weight(seq_kind, seq_n, g.seed, seq_coeffs);
      ExperimentReport rep("seq", {"n", "re", "im"});
      rep.header["kind"] = seq_kind;
      for (std::int64_t n = w.first_index(); n <= w.last_index(); ++n) {
        rep.add_row({static_cast<double>(n), w[n].real(), w[n].imag()});
      }
      emit(g, sub, rep);
    } else if (sub == expsum) {
      if (es_n.empty()) throw UsageError("--n: at least one length is required");
      std::int64_t top = 0;
      for (const auto n : es_n) {
        if (n < 1) throw UsageError("--n: lengths must be positive");
        top = std::max(top, n);
      }
      if (es_short > 0) {
        const auto w = make_weight(es_weight, es_n.front() + es_short, g.seed, es_coeffs);
        auto rep = short_interval_profile(w, es_n.front(), es_short, es_oversample);
        emit(g, sub, rep);
      } else {
        const auto w = make_weight(es_weight, top, g.seed, es_coeffs);
        auto rep = power_sum_profile(w, es_k, es_n, es_oversample);
        emit(g, sub, rep);
      }
    } else if (sub == kernel) {
      const KernelSpec spec{k_n, k_p, k_gamma, kernel_form_from_string(k_form)};
      ExperimentReport rep("kernel", {"theta", "value"});
      for (std::int64_t i = 0; i < k_grid; ++i) {
        const double th = static_cast<double>(i) / static_cast<double>(k_grid) - 0.5;
        rep.add_row({th, kernel_eval(spec, th)});
      }
      if (k_tail > 0.0) {
        if (spec.form == KernelForm::vdp) {
          const std::int64_t len = k_interval > 0 ? k_interval : 2 * (k_n + k_p) + 1;
          const auto t = tail_mass(k_n, k_p, k_tail, len);
          rep.summary["tail"] = {{"window", t.window},
                                 {"integral", t.integral},
                                 {"proof_bound", t.proof_bound},
                                 {"direct_bound", t.direct_bound}};
        } else if (spec.form == KernelForm::vdp_smooth) {
          double c = std::numeric_limits<double>::quiet_NaN();
          if (!k_fixture.empty()) c = load_fixture(k_fixture).empirical_constant;
          rep.summary["tail"] = smooth_vdp_tail_check(k_n, k_gamma, k_tail, k_d, c).summary;
        } else {
          throw UsageError("--tail: only defined for the vdp and vdp_smooth forms");
        }
      }
      emit(g, sub, rep);
    } else if (sub == gowers) {
      const auto w = make_weight(g_weight, g_n, g.seed, g_coeffs);
      const std::vector<Complex> vals(w.values().begin(), w.values().end());
      ExperimentReport rep("gowers", {"d", "norm", "raw_power", "cross_check"});
      rep.header["weight"] = g_weight;
      for (const int d : g_d) {
        const auto r = g_domain == "cyclic" ? gowers_norm_cyclic(CyclicSequence(vals), d) : gowers_norm_interval(vals, d);
        rep.add_row({static_cast<double>(d), r.norm, r.raw_power, r.cross_check});
        rep.summary["method_d" + std::to_string(d)] = r.method;
      }
      emit(g, sub, rep);
    } else if (sub == orb) {
      const auto sys = make_system(o_system, o_alpha, o_bits, o_modulus);
      const auto f = parse_observable("--f", o_f);
      const auto pts = orbit(sys, sys.seeded_point(o_x0), o_len);
      ExperimentReport rep("orbit", {"n", "x", "y", "index", "re", "im"});
      rep.header["system"] = sys.description();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const Complex v = f(sys, pts[i]);
        rep.add_row({static_cast<double>(i), to_unit(pts[i].x), to_unit(pts[i].y), static_cast<double>(pts[i].index),
                     v.real(), v.imag()});
      }
      emit(g, sub, rep);
    } else if (sub == bil) {
      if (b_nmin > b_nmax) throw UsageError("--nmin: must not exceed --nmax");
      if (!(b_rho > 1.0)) throw UsageError("--rho: must exceed 1");
      const auto nu = make_weight(b_weight, b_nmax, g.seed, b_coeffs);
      const auto sys = make_system(b_system, b_alpha, b_bits, b_modulus);
      std::vector<Point> xs;
      if (sys.kind() == SystemKind::doubling) {
        const Point base = sys.seeded_point(g.seed);
        for (int s = 0; s < b_points; ++s) xs.push_back(sys.iterate(base, std::int64_t{1000003} * s));
      } else {
        for (int s = 0; s < b_points; ++s) xs.push_back(sys.seeded_point(g.seed + static_cast<std::uint64_t>(s)));
      }
      auto rep = decay_profile(nu, sys, xs, parse_observable("--f", b_f), parse_observable("--g", b_g), b_a, b_b,
                               TimeScale{b_rho, b_nmin, b_nmax});
      rep.header["system"] = sys.description();
      emit(g, sub, rep);
    } else if (sub == lem) {
      const std::int64_t trials = l_trials > 0 ? l_trials : default_trials(l_which);
      auto rep = lemma_sweep(l_which, trials, g.seed);
      if (!l_fixture.empty()) {
        if (l_freeze) {
          save_fixture(l_fixture, fixture_from_sweep(rep));
          rep.summary["fixture_written"] = l_fixture;
        } else {
          const auto cmp = compare_to_fixture(rep, load_fixture(l_fixture));
          rep.summary["fixture"] = {{"path", l_fixture},     {"params_match", cmp.params_match},
                                    {"frozen", cmp.frozen},  {"observed", cmp.observed},
                                    {"limit", cmp.limit},    {"ok", cmp.ok}};
        }
      } else if (l_freeze) {
        throw UsageError("--freeze: requires --fixture");
      }
      emit(g, sub, rep);
    } else if (sub == ver) {
      const std::filesystem::path dir = v_fixtures.empty() ? default_fixture_dir() : std::filesystem::path(v_fixtures);
      check_fixtures(dir);
      AcceptanceOptions opts;
      opts.seed = g.seed;
      opts.quick = v_quick;
      opts.fixture_dir = dir;
      const auto run = run_acceptance(opts, [](const CriterionResult& r) {
        std::cerr << "criterion " << r.id << " " << (r.passed ? "PASS" : "FAIL") << "  " << r.title << "  ("
                  << r.seconds << " s)\n";
      });
      const std::string text = run.verdict().dump(2) + "\n";
      if (g.out.empty()) {
        std::cout << text;
      } else {
        write_atomic(g.out, text);
      }
      if (!run.passed()) {
        std::cerr << "failed criteria:";
        for (const int id : run.failures()) std::cerr << " " << id;
        std::cerr << "\n";
        return kExitFailure;
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FixtureError& e) {
    std::cerr << "fixture error: " << e.what() << "\n";
    return kExitFixture;
  } catch (const Error& e) {
    std::cerr << "error in " << sub->get_name() << ": " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
