// Acceptance run: one PASS/FAIL line per criterion AC1..AC10, exit status 3
// if any criterion fails.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "frictionlab/class2_solver.hpp"
#include "frictionlab/config.hpp"
#include "frictionlab/diagnostics.hpp"
#include "frictionlab/errors.hpp"
#include "frictionlab/fit.hpp"
#include "frictionlab/manufactured.hpp"
#include "frictionlab/runner.hpp"
#include "frictionlab/thermo.hpp"
#include "ms_oracle.hpp"

using namespace frictionlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Entropy bookkeeping gathered from every acceptance run for AC7.
struct EntropyLedger {
  std::size_t runs = 0;
  double min_conduction = 0.0;
  double min_friction = 0.0;
  double worst_excess = 0.0;  // max over runs of violation - consistency
  double max_violation = 0.0;
  void add(const EntropyStats& s) {
    min_conduction = runs == 0 ? s.min_conduction : std::min(min_conduction, s.min_conduction);
    min_friction = runs == 0 ? s.min_friction : std::min(min_friction, s.min_friction);
    const double excess = s.violation - s.consistency;
    worst_excess = runs == 0 ? excess : std::max(worst_excess, excess);
    max_violation = std::max(max_violation, s.violation);
    ++runs;
  }
};

RunConfig sweep_config(const fs::path& out) {
  RunConfig c = load_config(FRICTIONLAB_CONFIG_DIR "/acceptance_sweep.yaml");
  c.outputs.directory = (out / "ac1").string();
  return c;
}

Outcome ac1(const fs::path& out, EntropyLedger& ledger) {
  const RunConfig c = sweep_config(out);
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult r = run_sweep(c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& m : r.members) {
    ledger.add(m.run.entropy_class1);
    ledger.add(m.run.entropy_class2);
  }
  if (!r.all_ok) return {false, "a sweep member failed"};
  std::string hs;
  for (const auto& m : r.members) hs += fmt(" H(%g)=%.3e", m.epsilon, m.H_end);
  const std::size_t steps_small = r.members.back().steps;
  const bool ok = r.passed() && secs < 300.0 && steps_small >= 1500;
  return {ok, fmt("slope %.3f (>= %.2f), steps at eps=%g: %zu, monotone %s, C %.3g, %.1f s;",
                  r.fit ? r.fit->slope : 0.0, c.sweep.slope_threshold,
                  r.members.back().epsilon, steps_small, r.monotone ? "yes" : "no",
                  r.gronwall_C, secs) +
                  hs};
}

Outcome ac2() {
  RunConfig c = load_config(FRICTIONLAB_CONFIG_DIR "/acceptance_sweep.yaml");
  std::vector<double> e, R, Q;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const ResidualSample s = residual_sample(c, eps, 2);
    e.push_back(eps);
    R.push_back(s.R_norm);
    Q.push_back(s.Q_norm);
  }
  const RateFit fr = fit_rate(e, R), fq = fit_rate(e, Q);
  const bool ok = std::abs(fr.slope - 1.0) <= 0.2 && std::abs(fq.slope - 2.0) <= 0.2;
  return {ok, fmt("slope |R| %.3f (1.0 +- 0.2), slope |Q| %.3f (2.0 +- 0.2), eps 1e-1..1e-4",
                  fr.slope, fq.slope)};
}

Outcome ac3() {
  const IdentityConfig id;
  bool ok = true, body = false, supply = false;
  std::string d;
  for (const auto& p : builtin_manufactured_pairs()) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto conv = identity_convergence(p, id.ncells, id.dt, id.levels);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pair_ok = conv.min_order >= id.min_order && secs < 60.0 &&
                         conv.levels.back().defect_l1 < conv.levels.front().defect_l1;
    ok = ok && pair_ok;
    body = body || p.sources.has_body_force();
    supply = supply || p.sources.has_heat_supply();
    d += fmt(" %s min order %.2f (%.2fs);", p.name.c_str(), conv.min_order, secs);
  }
  ok = ok && body && supply;
  return {ok, fmt("required order >= %.1f over two halvings:", id.min_order) + d};
}

Outcome ac4(EntropyLedger& ledger) {
  RunConfig c = load_config(FRICTIONLAB_CONFIG_DIR "/acceptance_sweep.yaml");
  c.grid.ncells = 128;
  c.time.t_end = 1e3;  // the step budget ends the run
  RunOptions o;
  o.write_files = false;
  double worst = 0.0;
  std::size_t steps = 0;
  bool ok = true;
  for (Model m : {Model::class1, Model::class2}) {
    const SingleRunResult r = run_steps(c, m, 1e-2, 1000, o);
    ledger.add(r.entropy);
    steps = std::min(steps == 0 ? r.steps : steps, r.steps);
    const double d = std::max({r.conservation.max_mass_drift(), r.conservation.momentum_drift(),
                               r.conservation.energy_drift()});
    worst = std::max(worst, d);
    ok = ok && r.steps == 1000;
  }
  ok = ok && worst <= 1e-11;
  return {ok, fmt("max relative drift %.2e (<= 1e-11) over %zu steps, 128 cells, both models",
                  worst, steps)};
}

Outcome ac5() {
  std::mt19937_64 rng(12345);
  double worst = 0.0, worst_cons = 0.0, worst_lin = 0.0;
  const int count = 1000;
  for (int k = 0; k < count; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 4);
    const auto inst = testing::random_ms_instance(rng, n);
    const auto u = maxwell_stefan::solve(inst.rho, inst.theta, inst.friction, inst.forces);
    const auto o = testing::ms_oracle(inst.rho, inst.theta, inst.friction, inst.forces);
    FrictionMatrix f3 = inst.friction;
    f3.set_epsilon(3.0 * inst.friction.epsilon());
    const auto u3 = maxwell_stefan::solve(inst.rho, inst.theta, f3, inst.forces);
    double scale = 0.0, diff = 0.0, cons = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(o[i]));
    for (std::size_t i = 0; i < n; ++i) {
      diff = std::max(diff, std::abs(u[i] - o[i]));
      lin = std::max(lin, std::abs(u3[i] - 3.0 * u[i]));
      cons += inst.rho[i] * u[i];
    }
    worst = std::max(worst, diff / std::max(scale, 1e-300));
    worst_lin = std::max(worst_lin, lin / std::max(scale, 1e-300));
    worst_cons = std::max(worst_cons, std::abs(cons));
  }
  const bool ok = worst <= 1e-10 && worst_cons <= 1e-12 && worst_lin <= 1e-13;
  return {ok, fmt("%d instances n=2..5: oracle mismatch %.2e (<= 1e-10), |sum rho u| %.2e "
                  "(<= 1e-12), eps-linearity %.2e",
                  count, worst, worst_cons, worst_lin)};
}

Outcome ac6() {
  const ThermoModel t = default_config().thermo;
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> d(t.validity.gamma, t.validity.M);
  double gd = 0.0, min_order = 1e300;
  const int count = 1000;
  for (int s = 0; s < count; ++s) {
    const double rho = d(rng), theta = d(rng);
    for (std::size_t i = 0; i < t.species(); ++i) {
      const auto e = eval_species(t, i, rho, theta);
      gd = std::max(gd, std::abs(rho * e.psi + e.p - rho * e.mu) /
                            std::max(1.0, std::abs(rho * e.mu)));
      auto err_mu = [&](double h) {
        const double fd = (free_energy_density(t, i, rho + h, theta) -
                           free_energy_density(t, i, rho - h, theta)) / (2 * h);
        return std::abs(fd - e.mu);
      };
      auto err_eta = [&](double h) {
        const double fd = -(free_energy_density(t, i, rho, theta + h) -
                            free_energy_density(t, i, rho, theta - h)) / (2 * h);
        return std::abs(fd - rho * e.eta);
      };
      const double hr = 0.02 * rho, ht = 0.02 * theta;
      min_order = std::min(min_order, std::log2(err_mu(hr) / err_mu(hr / 2)));
      min_order = std::min(min_order, std::log2(err_eta(ht) / err_eta(ht / 2)));
    }
  }
  const StabilityReport st = check_stability(t, count, 778);
  const bool ok = gd <= 1e-12 && min_order >= 1.9 && st.passed;
  return {ok, fmt("%d states: Gibbs-Duhem %.2e (<= 1e-12), min FD order %.3f (>= 1.9), "
                  "stability %s",
                  count, gd, min_order, st.passed ? "ok" : "violated")};
}

Outcome ac7(const EntropyLedger& ledger) {
  // O(dx) behaviour of the consistency term on the smooth problem.
  RunConfig c = load_config(FRICTIONLAB_CONFIG_DIR "/acceptance_sweep.yaml");
  c.time.t_end = 0.2;
  RunOptions o;
  o.write_files = false;
  std::vector<double> dx, gap;
  EntropyLedger local = ledger;
  for (std::size_t n : {64, 128, 256}) {
    c.grid.ncells = n;
    const SingleRunResult r = run_single(c, Model::class2, 1e-2, o);
    local.add(r.entropy);
    dx.push_back(c.grid.dx());
    gap.push_back(r.entropy.consistency);
  }
  const double order = fit_rate(dx, gap).slope;
  const bool ok = local.min_conduction >= 0.0 && local.min_friction >= 0.0 &&
                  local.worst_excess <= 0.0 && order >= 0.8;
  return {ok, fmt("%zu runs: min conduction %.2e, min friction %.2e (>= 0), max entropy "
                  "decrease %.2e, bounded by consistency term (O(dx^%.2f))",
                  local.runs, local.min_conduction, local.min_friction, local.max_violation,
                  order)};
}

Outcome ac8() {
  const CoercivityReport r = sample_coercivity(default_config().thermo, 10000, 4242);
  return {r.positive && r.min_ratio > 0.0,
          fmt("%zu sampled pairs: infimum ratio %.4e (> 0)", r.samples, r.min_ratio)};
}

Outcome ac9() {
  const ThermoModel thermo = default_config().thermo;
  const Grid1D grid{8, 1.0};
  const double b = 1.0, theta0 = 1.0;
  const std::vector<double> rho{1.0, 0.6};
  double worst = 0.0;
  for (double eps : {1e-2, 1e-4}) {
    const FrictionMatrix f = FrictionMatrix::from_upper(2, std::vector<double>{b}, eps);
    const Class2Solver solver(grid, thermo, f, SourceConfig{});
    StateII s(2, grid.ncells);
    const double w0 = 1e-3;
    for (std::size_t j = 0; j < grid.ncells; ++j) {
      s.rho_at(0, j) = rho[0];
      s.rho_at(1, j) = rho[1];
      s.v_at(0, j) = rho[1] * w0 / (rho[0] + rho[1]);
      s.v_at(1, j) = -rho[0] * w0 / (rho[0] + rho[1]);
      s.theta[j] = theta0;
    }
    sync_conservative(s, thermo);
    // theta-frozen linearization: w(t) = w0 exp(-theta b (rho_1 + rho_2) t / eps)
    const double lambda = theta0 * b * (rho[0] + rho[1]) / eps;
    const double dt = eps / 100.0;
    double t = 0.0;
    while (lambda * t < std::log(100.0)) {  // down to 1% of w0
      solver.step(s, t, dt);
      t += dt;
      const double w = s.v_at(0, 3) - s.v_at(1, 3);
      const double exact = w0 * std::exp(-lambda * t);
      worst = std::max(worst, std::abs(w - exact) / exact);
    }
  }
  return {worst <= 0.01,
          fmt("max relative deviation of v1 - v2 from exp(-lambda t): %.2e (<= 1e-2) at "
              "dt = eps/100, eps = 1e-2 and 1e-4",
              worst)};
}

std::vector<std::pair<std::string, std::string>> tree(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().filename() == "sweep_timing.csv") continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files.emplace_back(fs::relative(e.path(), dir).string(), s.str());
  }
  std::sort(files.begin(), files.end());
  return files;
}

Outcome ac10(const fs::path& out) {
  RunConfig c = load_config(FRICTIONLAB_CONFIG_DIR "/acceptance_sweep.yaml");
  c.grid.ncells = 64;
  c.time.t_end = 0.1;
  c.time.snapshot_interval = 0.02;
  c.outputs.snapshots = true;
  std::vector<std::vector<std::pair<std::string, std::string>>> runs;
  for (std::size_t workers : {1, 1, 4}) {
    const fs::path dir = out / ("ac10_run" + std::to_string(runs.size()));
    fs::remove_all(dir);
    RunOptions o;
    o.directory = dir.string();
    o.workers = workers;
    run_sweep(c, o);
    runs.push_back(tree(dir));
  }
  const bool ok = !runs[0].empty() && runs[0] == runs[1] && runs[0] == runs[2];
  return {ok, fmt("%zu CSV files compared: two runs with 1 worker and one with 4 %s",
                  runs[0].size(), ok ? "are byte-identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string out = "acceptance_out";
  app.add_option("--out", out, "scratch directory for outputs");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(out);

  EntropyLedger ledger;
  int failures = 0;
  auto report = [&](const char* id, const std::function<Outcome()>& f) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s  %s [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };

  report("AC1", [&] { return ac1(out, ledger); });
  report("AC2", [] { return ac2(); });
  report("AC3", [] { return ac3(); });
  report("AC4", [&] { return ac4(ledger); });
  report("AC5", [] { return ac5(); });
  report("AC6", [] { return ac6(); });
  report("AC7", [&] { return ac7(ledger); });
  report("AC8", [] { return ac8(); });
  report("AC9", [] { return ac9(); });
  report("AC10", [&] { return ac10(out); });
  return failures == 0 ? 0 : 3;
}
