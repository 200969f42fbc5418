#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "frictionlab/config.hpp"
#include "frictionlab/errors.hpp"
#include "helpers.hpp"

using namespace frictionlab;

namespace {

const char* kMinimal = R"(
thermo:
  R: [1.0, 0.5]
  c: [1.5, 2.5]
friction:
  b: [1.0]
  epsilon: 0.01
)";

std::vector<std::string> issues_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.issues();
  }
  return {};
}

bool mentions(const std::vector<std::string>& issues, const std::string& needle) {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("config: minimal file takes defaults") {
  const RunConfig c = parse_config(kMinimal);
  CHECK(c.species() == 2);
  CHECK(c.primary_epsilon() == 0.01);
  CHECK(c.grid.ncells == 128);
  CHECK(c.integrator == FrictionIntegrator::exponential);
  CHECK(c.friction(0.5).epsilon() == 0.5);
  CHECK(c.friction(0.5)(0, 1) == 1.0);
}

TEST_CASE("config: serialization round trip") {
  RunConfig c = testing::smooth_config(96, 3e-3);
  c.epsilon_sweep = {0.1, 0.01, 0.001};
  c.sources.body_force = {{0.1, 0.2, 2.0, 1.0, 0.3}, {0.0, 0.0, 1.0, 0.0, 0.0}};
  c.sources.heat_supply = {0.0, 0.05, 1.0, 0.0, 0.1};
  c.sources.kappa = {0.002, 0.001};
  c.time.dt = 1e-4;
  c.time.t_end = 0.123456789012345;
  c.ic.preset = IcPreset::two_state;
  c.ic.rho_inner = {1.5, 0.5};
  c.integrator = FrictionIntegrator::implicit_midpoint;
  c.identity.pairs = {"plain_n2"};
  const RunConfig back = parse_config(to_yaml(c));
  CHECK(back == c);
  CHECK(to_yaml(back) == to_yaml(c));
  CHECK(parse_config(to_yaml(default_config())) == default_config());
}

TEST_CASE("config: unknown keys and bad values are all reported") {
  const auto issues = issues_of(std::string(kMinimal) + R"(
grid:
  ncels: 64
  length: -1.0
time:
  cfl_number: 2.5
)");
  CHECK(issues.size() >= 3);
  CHECK(mentions(issues, "ncels"));
  CHECK(mentions(issues, "length"));
  CHECK(mentions(issues, "cfl_number"));

  CHECK(mentions(issues_of(std::string(kMinimal) + "extra_block: 1\n"), "extra_block"));
  CHECK(!issues_of("thermo: [1, 2\n").empty());
}

TEST_CASE("config: cross-block invariants") {
  // n = 3 needs three friction coefficients.
  CHECK(!issues_of(R"(
thermo:
  R: [1.0, 0.5, 0.3]
  c: [1.5, 2.5, 2.0]
friction:
  b: [1.0]
  epsilon: 0.01
)").empty());
  // Some epsilon is required.
  CHECK(!issues_of(R"(
thermo:
  R: [1.0, 0.5]
  c: [1.5, 2.5]
friction:
  b: [1.0]
)").empty());
  CHECK(!issues_of(std::string(kMinimal) + "ic:\n  rho: [1.0]\n").empty());
  CHECK(!issues_of(std::string(kMinimal) + "ic:\n  preset: spiral\n").empty());
}

TEST_CASE("config: load_config") {
  CHECK_THROWS_AS(load_config("/nonexistent/dir/config.yaml"), ConfigError);
  const auto path = std::filesystem::temp_directory_path() / "frictionlab_test_config.yaml";
  {
    std::ofstream out(path);
    out << kMinimal;
  }
  CHECK(load_config(path.string()) == parse_config(kMinimal));
  std::filesystem::remove(path);
}
