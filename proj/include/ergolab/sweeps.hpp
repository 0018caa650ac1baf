#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergolab/fixtures.hpp"
#include "ergolab/report.hpp"

namespace ergolab {

/// Seeded calibration sweeps behind the frozen empirical constants.
///
/// Names: lp, lp-eps, bmz, lambda, entropy, sigma, smooth-vdp, weak-type.
/// Trial i draws from Rng::fork(seed, i), so the result does not depend on
/// the worker count. The summary carries `empirical_constant` (the maximum
/// over trials of the normalized statistic) and `violations` (trials whose
/// hard invariants failed).
const std::vector<std::string>& lemma_names();

/// Trial count of the frozen calibration run.
std::int64_t default_trials(const std::string& which);

/// Whether the sweep produces a constant that is frozen as a fixture.
bool has_fixture(const std::string& which);

ExperimentReport lemma_sweep(const std::string& which, std::int64_t trials, std::uint64_t seed);

/// Fixture built from a sweep report. For bmz the frozen constant is the
/// large-sieve bound (see the report's `frozen_constant`).
Fixture fixture_from_sweep(const ExperimentReport& report);

/// Compares a sweep with a frozen fixture: ok iff the lemma and parameters
/// match and the new constant is at most kFixtureTolerance times the frozen one.
struct FixtureComparison {
  bool params_match = false;
  double frozen = 0.0;
  double observed = 0.0;
  double limit = 0.0;
  bool ok = false;
};
FixtureComparison compare_to_fixture(const ExperimentReport& report, const Fixture& fixture);

}  // namespace ergolab
