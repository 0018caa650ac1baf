#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "ergolab/acceptance.hpp"
#include "ergolab/error.hpp"
#include "ergolab/fixtures.hpp"
#include "ergolab/sweeps.hpp"

using namespace ergolab;
namespace fs = std::filesystem;

TEST_SUITE("sweeps") {
  TEST_CASE("sweeps do not depend on the worker count") {
    ::setenv("ERGOLAB_THREADS", "1", 1);
    const auto one = lemma_sweep("entropy", 6, 99).to_csv();
    ::setenv("ERGOLAB_THREADS", "4", 1);
    const auto four = lemma_sweep("entropy", 6, 99).to_csv();
    ::unsetenv("ERGOLAB_THREADS");
    CHECK(one == four);
    CHECK(lemma_sweep("entropy", 6, 100).to_csv() != one);
  }

  TEST_CASE("sweep summaries") {
    const auto lp = lemma_sweep("lp", 5, 3);
    CHECK(lp.rows.size() == 5);
    CHECK(lp.summary["violations"].get<std::int64_t>() == 0);
    for (double v : lp.column("trivial_excess")) CHECK(v == 0.0);
    const auto sigma = lemma_sweep("sigma", 200, 1);
    CHECK(sigma.summary["empirical_constant"].get<double>() <= 1e-12);
    const auto bmz = lemma_sweep("bmz", 3, 1);
    CHECK(bmz.rows.size() == 3 * 2 * 3);
    CHECK(bmz.summary["violations"].get<std::int64_t>() == 0);
    CHECK_THROWS_AS(lemma_sweep("nope", 1, 1), PreconditionError);
    CHECK_THROWS_AS(lemma_sweep("lp", 0, 1), PreconditionError);
    CHECK_FALSE(has_fixture("sigma"));
    CHECK(default_trials("lp") == 200);
  }

  TEST_CASE("fixtures from sweeps") {
    const auto rep = lemma_sweep("lambda", 3, 5);
    const Fixture f = fixture_from_sweep(rep);
    CHECK(f.lemma == "lambda");
    CHECK(f.seed == 5);
    CHECK(f.empirical_constant == rep.summary["empirical_constant"].get<double>());
    CHECK(compare_to_fixture(rep, f).ok);

    Fixture shrunk = f;
    shrunk.empirical_constant = f.empirical_constant / 1.2;
    CHECK_FALSE(compare_to_fixture(rep, shrunk).ok);
    Fixture other = f;
    other.params["K"] = 9;
    const auto c = compare_to_fixture(rep, other);
    CHECK_FALSE(c.params_match);
    CHECK_FALSE(c.ok);

    const auto bmz = fixture_from_sweep(lemma_sweep("bmz", 2, 1));
    CHECK(bmz.empirical_constant == 2.0);
    CHECK(bmz.params.contains("sweep_maximum"));
    CHECK_THROWS_AS(fixture_from_sweep(lemma_sweep("sigma", 2, 1)), PreconditionError);
  }

  TEST_CASE("fixture directory checks name the bad file") {
    const fs::path dir = fs::temp_directory_path() / ("ergolab_fixture_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    for (const auto& name : fixture_files()) fs::copy_file(default_fixture_dir() / name, dir / name,
                                                           fs::copy_options::overwrite_existing);
    CHECK_NOTHROW(check_fixtures(dir));
    {
      std::ofstream(dir / "entropy.json") << "{\"lemma\": \"entropy\", \"params\": {}, \"empirical_constant\": \"x\"";
    }
    try {
      check_fixtures(dir);
      FAIL("corrupt fixture accepted");
    } catch (const FixtureError& e) {
      CHECK(std::string(e.what()).find("entropy.json") != std::string::npos);
    }
    fs::copy_file(default_fixture_dir() / "lp.json", dir / "entropy.json", fs::copy_options::overwrite_existing);
    CHECK_THROWS_AS(check_fixtures(dir), FixtureError);
    fs::remove(dir / "bmz.json");
    CHECK_THROWS_AS(check_fixtures(dir), FixtureError);
    fs::remove_all(dir);
  }

  TEST_CASE("acceptance verdict layout") {
    AcceptanceOptions o;
    o.quick = true;
    o.only = {1, 9};
    const auto run = run_acceptance(o);
    REQUIRE(run.criteria.size() == 2);
    CHECK(run.passed());
    const Json v = run.verdict();
    CHECK(v["criteria"][0]["id"] == 1);
    CHECK(v["criteria"][1]["title"] == criterion_title(9));
    CHECK_FALSE(v.dump().find("seconds") != std::string::npos);
    CHECK(run_acceptance(o).verdict().dump() == v.dump());
    CHECK_THROWS_AS(criterion_title(15), RangeError);
  }
}
