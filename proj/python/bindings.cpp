#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ergolab/acceptance.hpp"
#include "ergolab/arith_seq.hpp"
#include "ergolab/averages.hpp"
#include "ergolab/dynamics.hpp"
#include "ergolab/error.hpp"
#include "ergolab/gowers.hpp"
#include "ergolab/kernels.hpp"
#include "ergolab/spectra.hpp"
#include "ergolab/sweeps.hpp"

namespace py = pybind11;
using namespace ergolab;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

CArray to_array(std::span<const Complex> v) {
  CArray out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<Complex> from_array(const CArray& a) {
  if (a.ndim() != 1) throw ShapeError("expected a one-dimensional array");
  return std::vector<Complex>(a.data(), a.data() + a.size());
}

Observable observable(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  if (kind == "constant" && colon == std::string::npos) return Observable::constant();
  if (kind == "trig" && colon != std::string::npos) return Observable::trig(std::stoll(spec.substr(colon + 1)));
  if (kind == "indicator" && colon != std::string::npos) {
    const auto rest = spec.substr(colon + 1);
    const auto c2 = rest.find(':');
    if (c2 != std::string::npos) return Observable::indicator(std::stod(rest.substr(0, c2)), std::stod(rest.substr(c2 + 1)));
  }
  throw UsageError("observable: expected constant, trig:k or indicator:lo:hi, got '" + spec + "'");
}

WeightSequence weight(const std::string& kind, std::int64_t n, std::uint64_t seed) {
  if (kind == "mobius") return mobius_sieve(n);
  if (kind == "liouville") return liouville_sieve(n);
  if (kind == "ones") return WeightSequence::raw(std::vector<Complex>(static_cast<std::size_t>(n), 1.0));
  if (kind == "random-multiplicative") return random_multiplicative(n, seed, false);
  throw UsageError("weight: unknown kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Compiled core of ergolab";
  m.attr("__version__") = kToolVersion;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<BoundViolation>(m, "BoundViolation", base.ptr());
  py::register_exception<DegenerateError>(m, "DegenerateError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<InvertibilityError>(m, "InvertibilityError", base.ptr());
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<FixtureError>(m, "FixtureError", base.ptr());

  m.def("mobius", [](std::int64_t n) { return to_array(mobius_sieve(n).values()); }, py::arg("n"),
        "mu(1..n) as a complex array");
  m.def("liouville", [](std::int64_t n) { return to_array(liouville_sieve(n).values()); }, py::arg("n"));
  m.def(
      "automatic",
      [](const std::string& kind, std::int64_t n) {
        if (kind != "thue_morse" && kind != "rudin_shapiro") throw UsageError("automatic: unknown kind '" + kind + "'");
        const auto k = kind == "thue_morse" ? AutomaticKind::thue_morse : AutomaticKind::rudin_shapiro;
        return to_array(automatic_sequence(k, n).values());
      },
      py::arg("kind"), py::arg("n"), "Values at 0..n");

  py::class_<SupEstimate>(m, "SupEstimate")
      .def_readonly("value", &SupEstimate::value)
      .def_readonly("error_bound", &SupEstimate::error_bound)
      .def_readonly("argmax_theta", &SupEstimate::argmax_theta)
      .def("__repr__", [](const SupEstimate& s) {
        return "SupEstimate(value=" + std::to_string(s.value) + ", error_bound=" + std::to_string(s.error_bound) + ")";
      });
  m.def(
      "sup_norm",
      [](const CArray& coeffs, std::int64_t lo, int oversample) {
        return sup_norm(TrigPolynomial(lo, from_array(coeffs)), oversample);
      },
      py::arg("coeffs"), py::arg("lo") = 0, py::arg("oversample") = kDefaultOversample,
      "Certified sup of sum c_k e(k theta), k = lo + index");

  m.def("fejer", py::vectorize([](std::int64_t n, double theta) { return fejer_eval(n, theta); }), py::arg("n"),
        py::arg("theta"));
  m.def("vdp", py::vectorize([](std::int64_t n, std::int64_t p, double theta) { return vdp_eval(n, p, theta); }),
        py::arg("n"), py::arg("p"), py::arg("theta"));
  m.def("vdp_multiplier", py::vectorize([](std::int64_t n, std::int64_t p, double t) { return vdp_multiplier(n, p, t); }),
        py::arg("n"), py::arg("p"), py::arg("t"));

  py::class_<GowersResult>(m, "GowersResult")
      .def_readonly("d", &GowersResult::d)
      .def_readonly("norm", &GowersResult::norm)
      .def_readonly("raw_power", &GowersResult::raw_power)
      .def_readonly("method", &GowersResult::method)
      .def_readonly("cross_check", &GowersResult::cross_check);
  m.def(
      "gowers_cyclic", [](const CArray& f, int d) { return gowers_norm_cyclic(CyclicSequence(from_array(f)), d); },
      py::arg("f"), py::arg("d"));
  m.def(
      "gowers_interval", [](const CArray& f, int d) { return gowers_norm_interval(from_array(f), d); }, py::arg("f"),
      py::arg("d"));

  m.def(
      "decay_profile_json",
      [](const std::string& nu_kind, const std::string& system, std::int64_t a, std::int64_t b, std::int64_t nmin,
         std::int64_t nmax, int points, const std::string& f, const std::string& g, std::uint64_t seed) {
        const auto nu = weight(nu_kind, nmax, seed);
        const SystemKind kind = system_kind_from_string(system);
        const DynSystem sys = kind == SystemKind::rotation       ? DynSystem::rotation()
                              : kind == SystemKind::skew_product ? DynSystem::skew_product()
                              : kind == SystemKind::doubling     ? DynSystem::doubling(seed)
                                                                 : DynSystem::cyclic(997);
        std::vector<Point> xs;
        for (int s = 0; s < points; ++s) {
          xs.push_back(kind == SystemKind::doubling ? sys.iterate(sys.seeded_point(seed), std::int64_t{1000003} * s)
                                                    : sys.seeded_point(seed + static_cast<std::uint64_t>(s)));
        }
        py::gil_scoped_release release;
        return decay_profile(nu, sys, xs, observable(f), observable(g), a, b, TimeScale{2.0, nmin, nmax}).to_json().dump();
      },
      py::arg("weight"), py::arg("system"), py::arg("a"), py::arg("b"), py::arg("nmin"), py::arg("nmax"),
      py::arg("points"), py::arg("f"), py::arg("g"), py::arg("seed"));

  m.def("lemma_names", &lemma_names);
  m.def(
      "lemma_sweep_json",
      [](const std::string& which, std::int64_t trials, std::uint64_t seed) {
        py::gil_scoped_release release;
        return lemma_sweep(which, trials, seed).to_json().dump();
      },
      py::arg("which"), py::arg("trials"), py::arg("seed"));

  m.def("default_fixture_dir", [] { return default_fixture_dir().string(); });
  m.def(
      "verify_json",
      [](std::uint64_t seed, bool quick, std::vector<int> only, const std::string& fixtures) {
        AcceptanceOptions o;
        o.seed = seed;
        o.quick = quick;
        o.only = std::move(only);
        o.fixture_dir = fixtures.empty() ? default_fixture_dir() : std::filesystem::path(fixtures);
        check_fixtures(o.fixture_dir);
        py::gil_scoped_release release;
        return run_acceptance(o).verdict().dump();
      },
      py::arg("seed") = kDefaultSeed, py::arg("quick") = true, py::arg("only") = std::vector<int>{},
      py::arg("fixtures") = "");
}
