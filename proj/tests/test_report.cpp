#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ergolab/error.hpp"
#include "ergolab/fixtures.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/report.hpp"
#include "ergolab/stats.hpp"

using namespace ergolab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / ("ergolab_report_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("number formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5e-300) == "-2.5e-300");
    CHECK(format_double(2.0 / 3.0) == "0.66666666666666663");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  }

  TEST_CASE("CSV and JSON layout") {
    ExperimentReport r("demo", {"N", "value"});
    r.header["seed"] = 7;
    r.header["kind"] = "mobius";
    r.add_row({1.0, 0.5});
    r.add_row({2.0, 0.25});
    r.summary["slope"] = -1.0;
    CHECK(r.to_csv() == "# report=demo\n# seed=7\n# kind=mobius\nN,value\n1,0.5\n2,0.25\n");
    const Json j = r.to_json();
    CHECK(j["report"] == "demo");
    CHECK(j["rows"].size() == 2);
    CHECK(j["summary"]["slope"] == -1.0);
    CHECK(r.column("value") == std::vector<double>{0.5, 0.25});
    CHECK(r.at(1, "N") == 2.0);
    CHECK_THROWS_AS(r.add_row({1.0}), ShapeError);
    CHECK_THROWS_AS(r.column("missing"), RangeError);
  }

  TEST_CASE("atomic writes") {
    const fs::path dir = scratch_dir();
    const fs::path target = dir / "out.csv";
    write_atomic(target, "first\n");
    write_atomic(target, "second\n");
    CHECK(slurp(target) == "second\n");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
    CHECK(entries == 1);
    CHECK_THROWS_AS(write_atomic(dir / "no_such_dir" / "x.csv", "x"), Error);
    fs::remove_all(dir);
  }

  TEST_CASE("fixtures") {
    const fs::path dir = scratch_dir();
    Fixture f;
    f.lemma = "lp";
    f.params = {{"trials", 200}, {"R", 16.0}};
    f.empirical_constant = 0.125;
    f.seed = 42;
    save_fixture(dir / "lp.json", f);
    const Fixture g = load_fixture(dir / "lp.json");
    CHECK(g.lemma == "lp");
    CHECK(g.params["trials"] == 200);
    CHECK(g.empirical_constant == 0.125);
    CHECK(g.seed == 42);

    const auto expect_named = [&](const std::string& body) {
      std::ofstream(dir / "bad.json") << body;
      try {
        load_fixture(dir / "bad.json");
        FAIL("no error for " << body);
      } catch (const FixtureError& e) {
        CHECK(std::string(e.what()).find("bad.json") != std::string::npos);
      }
    };
    expect_named("{ not json");
    expect_named("[]");
    expect_named(R"({"lemma":"lp","params":{},"seed":1})");
    expect_named(R"({"lemma":"lp","params":{},"empirical_constant":"big","seed":1})");
    expect_named(R"({"lemma":"lp","params":{},"empirical_constant":-1,"seed":1})");
    CHECK_THROWS_AS(load_fixture(dir / "absent.json"), FixtureError);
    fs::remove_all(dir);
  }

  TEST_CASE("worker pool") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += static_cast<int>(i); });
    for (std::size_t i = 0; i < hits.size(); ++i) REQUIRE(hits[i] == static_cast<int>(i));
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                      if (i == 7) throw RangeError("seven");
                    }),
                    RangeError);
    ::setenv("ERGOLAB_THREADS", "3", 1);
    CHECK(thread_count() == 3);
    std::atomic<int> count{0};
    parallel_for(100, [&](std::size_t) { ++count; });
    CHECK(count == 100);
    ::setenv("ERGOLAB_THREADS", "junk", 1);
    CHECK(thread_count() >= 1);
    ::unsetenv("ERGOLAB_THREADS");
  }

  TEST_CASE("statistics helpers") {
    const std::vector<double> x{1.0, 2.0, 3.0}, y{2.0, 4.0, 6.0};
    CHECK(ls_slope(x, y) == doctest::Approx(2.0));
    const std::vector<double> n{1.0, 10.0, 100.0}, p{1.0, 0.1, 0.01};
    CHECK(log_log_slope(n, p) == doctest::Approx(-1.0));
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
    CHECK_THROWS(log_log_slope(n, std::vector<double>{1.0, 0.0, 1.0}));
  }
}
