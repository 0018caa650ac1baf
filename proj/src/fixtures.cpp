#include "ergolab/fixtures.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ergolab/error.hpp"

namespace ergolab {

Fixture load_fixture(const std::filesystem::path& path) {
  const std::string name = path.string();
  std::ifstream in(path);
  if (!in) throw FixtureError("fixture " + name + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw FixtureError("fixture " + name + ": invalid JSON (" + e.what() + ")");
  }
  Fixture f;
  try {
    if (!j.is_object()) throw FixtureError("fixture " + name + ": top level must be an object");
    f.lemma = j.at("lemma").get<std::string>();
    f.params = j.at("params");
    const Json& c = j.at("empirical_constant");
    if (!c.is_number()) throw FixtureError("fixture " + name + ": empirical_constant must be a number");
    f.empirical_constant = c.get<double>();
    f.seed = j.at("seed").get<std::uint64_t>();
  } catch (const Json::exception& e) {
    throw FixtureError("fixture " + name + ": " + e.what());
  }
  if (!f.params.is_object()) throw FixtureError("fixture " + name + ": params must be an object");
  if (!std::isfinite(f.empirical_constant) || f.empirical_constant < 0.0) {
    throw FixtureError("fixture " + name + ": empirical_constant must be finite and non-negative");
  }
  return f;
}

Json fixture_to_json(const Fixture& f) {
  Json j;
  j["lemma"] = f.lemma;
  j["params"] = f.params;
  j["empirical_constant"] = f.empirical_constant;
  j["seed"] = f.seed;
  return j;
}

void save_fixture(const std::filesystem::path& path, const Fixture& f) {
  write_atomic(path, fixture_to_json(f).dump(2) + "\n");
}

}  // namespace ergolab
