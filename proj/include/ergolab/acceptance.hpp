#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "ergolab/report.hpp"

namespace ergolab {

inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr int kCriterionCount = 14;

struct AcceptanceOptions {
  std::uint64_t seed = kDefaultSeed;
  bool quick = false;
  std::filesystem::path fixture_dir;
  /// Criteria to run (1-based); empty runs all of them.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  Json details = Json::object();
  double seconds = 0.0;  // wall time; kept out of the verdict
};

struct AcceptanceRun {
  std::uint64_t seed = 0;
  bool quick = false;
  std::vector<CriterionResult> criteria;
  bool passed() const;
  std::vector<int> failures() const;
  /// Machine-readable verdict. Contains no timings, so identical seeds give
  /// identical documents.
  Json verdict() const;
};

/// ERGOLAB_FIXTURES if set, else the fixtures directory of the source tree.
std::filesystem::path default_fixture_dir();

/// File names of the frozen fixtures expected in the fixture directory.
const std::vector<std::string>& fixture_files();

/// Loads every expected fixture; FixtureError naming the first bad file.
void check_fixtures(const std::filesystem::path& dir);

std::string criterion_title(int id);

/// Runs the selected criteria in order. `progress` is called after each one.
AcceptanceRun run_acceptance(const AcceptanceOptions& options,
                             const std::function<void(const CriterionResult&)>& progress = {});

}  // namespace ergolab
