// Runs acceptance criteria 1-14 and prints one line per criterion.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "ergolab/acceptance.hpp"
#include "ergolab/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ergolab acceptance suite"};
  ergolab::AcceptanceOptions opts;
  std::string fixtures, json_out;
  app.add_option("--seed", opts.seed)->capture_default_str();
  app.add_flag("--quick", opts.quick);
  app.add_option("--fixtures", fixtures);
  app.add_option("--only", opts.only, "Criterion ids to run")->check(CLI::Range(1, ergolab::kCriterionCount));
  app.add_option("--json", json_out, "Write the verdict here");
  CLI11_PARSE(app, argc, argv);
  opts.fixture_dir = fixtures.empty() ? ergolab::default_fixture_dir() : std::filesystem::path(fixtures);

  try {
    ergolab::check_fixtures(opts.fixture_dir);
  } catch (const ergolab::FixtureError& e) {
    std::cout << "fixture error: " << e.what() << std::endl;
    return 3;
  }
  const auto run = ergolab::run_acceptance(opts, [](const ergolab::CriterionResult& r) {
    char line[160];
    std::snprintf(line, sizeof line, "criterion %2d: %s  %s (%.1f s)", r.id, r.passed ? "PASS" : "FAIL",
                  r.title.c_str(), r.seconds);
    std::cout << line << std::endl;
    if (!r.passed) std::cout << "  details: " << r.details.dump() << std::endl;
  });
  if (!json_out.empty()) ergolab::write_atomic(json_out, run.verdict().dump(2) + "\n");
  const auto failed = run.failures();
  std::cout << (failed.empty() ? "all criteria passed" : "failed:");
  for (const int id : failed) std::cout << " " << id;
  std::cout << std::endl;
  return failed.empty() ? 0 : 1;
}
