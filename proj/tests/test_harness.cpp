#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "frictionlab/csv.hpp"
#include "frictionlab/errors.hpp"
#include "frictionlab/initial_conditions.hpp"
#include "frictionlab/runner.hpp"
#include "helpers.hpp"

using namespace frictionlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig small_sweep(const fs::path& dir) {
  RunConfig c = testing::smooth_config(32);
  c.epsilon.reset();
  c.epsilon_sweep = {1e-1, 1e-2, 1e-3};
  c.time.t_end = 0.05;
  c.time.snapshot_interval = 0.01;
  c.outputs.directory = dir.string();
  c.outputs.snapshots = true;
  return c;
}

}  // namespace

TEST_CASE("harness: csv numbers read back exactly") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) {
    const std::string s = csv::format(x);
    double y = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), y);
    CHECK(y == x);
  }
}

TEST_CASE("harness: well-prepared data start at H = 0") {
  RunConfig c = testing::smooth_config(32);
  RunOptions o;
  o.write_files = false;
  const auto r = run_paired(c, 1e-2, o);
  REQUIRE(r.series.size() >= 2);
  CHECK(r.H0() == 0.0);
  CHECK(r.H_end() > 0.0);
  CHECK(r.series.back().t == doctest::Approx(c.time.t_end).epsilon(1e-14));
}

TEST_CASE("harness: velocity mismatch decays on the friction time scale") {
  // Homogeneous data: H is the kinetic mismatch 1/2 mu w^2 up to O(w^4)
  // heating, so log H falls at twice the friction rate theta b (rho_1 + rho_2)/eps.
  RunConfig c = testing::smooth_config(32);
  c.ic.preset = IcPreset::uniform;
  c.ic.rho = {1.0, 1.0};
  c.ic.well_prepared = false;
  c.ic.velocity_mismatch = 0.02;
  c.time.t_end = 0.008;
  c.time.snapshot_interval = 0.002;
  RunOptions o;
  o.write_files = false;
  const double eps = 1e-2;
  const auto r = run_paired(c, eps, o);
  REQUIRE(r.series.size() == 5);
  CHECK(r.H0() > 0.0);
  std::vector<double> t, h;
  for (const auto& row : r.series) {
    t.push_back(row.t);
    h.push_back(row.H);
  }
  double slope = 0.0;  // least squares of log H against t
  {
    double st = 0, sh = 0, stt = 0, sth = 0;
    const double n = static_cast<double>(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
      st += t[k];
      sh += std::log(h[k]);
      stt += t[k] * t[k];
      sth += t[k] * std::log(h[k]);
    }
    slope = (n * sth - st * sh) / (n * stt - st * st);
  }
  const double lambda = 1.0 * 1.0 * 2.0 / eps;
  CHECK(-slope == doctest::Approx(2.0 * lambda).epsilon(0.1));
}

TEST_CASE("harness: sweep preconditions") {
  RunConfig c = small_sweep(fs::temp_directory_path() / "frictionlab_sweep_pre");
  RunOptions o;
  o.write_files = false;
  c.epsilon_sweep = {1e-2};
  CHECK_THROWS_AS(run_sweep(c, o), PreconditionError);
  c.epsilon_sweep = {1e-2, 5e-3, 2e-3};  // under two decades
  CHECK_THROWS_AS(run_sweep(c, o), PreconditionError);
}

TEST_CASE("harness: ill-prepared sweeps are flagged") {
  RunConfig c = small_sweep(fs::temp_directory_path() / "frictionlab_sweep_ill");
  c.ic.well_prepared = false;
  c.ic.velocity_mismatch = 0.2;
  c.time.t_end = 0.01;
  RunOptions o;
  o.write_files = false;
  const auto r = run_sweep(c, o);
  CHECK(r.all_ok);
  CHECK(r.ill_prepared);
  CHECK(!r.passed());
}

TEST_CASE("harness: outputs do not depend on repetition or worker count") {
  const fs::path root = fs::temp_directory_path() / "frictionlab_determinism";
  fs::remove_all(root);
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> contents;
  for (std::size_t workers : {1, 1, 3}) {
    const fs::path dir = root / ("run" + std::to_string(contents.size()));
    RunOptions o;
    o.workers = workers;
    run_sweep(small_sweep(dir), o);
    std::vector<std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
      if (e.is_regular_file() && e.path().filename() != "sweep_timing.csv")
        files.push_back(fs::relative(e.path(), dir).string());
    std::sort(files.begin(), files.end());
    if (names.empty()) names = files;
    CHECK(files == names);
    std::vector<std::string> data;
    for (const auto& f : files) data.push_back(slurp(dir / f));
    contents.push_back(data);
  }
  CHECK(names.size() >= 7);
  CHECK(contents[0] == contents[1]);
  CHECK(contents[0] == contents[2]);
  fs::remove_all(root);
}
