#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "ergolab/report.hpp"

namespace ergolab {

/// Frozen empirical constant: {lemma, params, empirical_constant, seed}.
struct Fixture {
  std::string lemma;
  Json params = Json::object();
  double empirical_constant = 0.0;
  std::uint64_t seed = 0;
};

/// Parses and validates a fixture; FixtureError naming the file otherwise.
Fixture load_fixture(const std::filesystem::path& path);

Json fixture_to_json(const Fixture& f);

void save_fixture(const std::filesystem::path& path, const Fixture& f);

/// Allowed growth of a re-run constant over its frozen value.
inline constexpr double kFixtureTolerance = 1.10;

}  // namespace ergolab
