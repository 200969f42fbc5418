// frictionlab command line: simulate, paired, sweep, check-identity, check-thermo,
// show-config.
//
// Exit codes: 0 success, 1 validation failure, 2 simulation domain failure,
// 3 acceptance-threshold failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "frictionlab/config.hpp"
#include "frictionlab/diagnostics.hpp"
#include "frictionlab/errors.hpp"
#include "frictionlab/manufactured.hpp"
#include "frictionlab/runner.hpp"
#include "frictionlab/thermo.hpp"

using namespace frictionlab;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kDomain = 2;
constexpr int kThreshold = 3;

int simulate(const std::string& path, const std::string& model_name) {
  const RunConfig config = load_config(path);
  const Model model = model_name == "class1" ? Model::class1 : Model::class2;
  const SingleRunResult r = run_single(config, model, config.primary_epsilon());
  std::printf("model %s  eps %g  steps %zu  t %g\n", to_string(model).c_str(), r.epsilon,
              r.steps, r.t_final);
  std::printf("entropy %.12g -> %.12g  decrease %.3e  consistency %.3e\n", r.entropy.initial,
              r.entropy.final, r.entropy.violation, r.entropy.consistency);
  std::printf("mass drift %.3e  momentum drift %.3e  energy drift %.3e\n",
              r.conservation.max_mass_drift(), r.conservation.momentum_drift(),
              r.conservation.energy_drift());
  if (r.entropy.clamped_cells > 0)
    std::printf("vacuum floor active in up to %zu cells\n", r.entropy.clamped_cells);
  std::printf("output: %s\n", config.outputs.directory.c_str());
  return kOk;
}

int paired(const std::string& path) {
  const RunConfig config = load_config(path);
  const PairedRunResult r = run_paired(config, config.primary_epsilon());
  std::printf("eps %g  steps %zu\n", r.epsilon, r.steps);
  std::printf("%12s %14s %14s %14s %14s\n", "t", "H", "friction", "conduction", "margin");
  for (const auto& row : r.series)
    std::printf("%12.6g %14.6e %14.6e %14.6e %14.6e\n", row.t, row.H, row.friction_dissipation,
                row.conduction_dissipation, row.coercivity_margin);
  std::printf("output: %s/relentropy.csv\n", config.outputs.directory.c_str());
  return kOk;
}

int sweep(const std::string& path, std::size_t workers) {
  const RunConfig config = load_config(path);
  RunOptions options;
  if (workers > 0) options.workers = workers;
  const SweepResult r = run_sweep(config, options);
  std::printf("%12s %8s %8s %14s %14s %10s\n", "eps", "status", "steps", "H(0)", "H(t_end)",
              "seconds");
  for (const auto& m : r.members)
    std::printf("%12g %8s %8zu %14.6e %14.6e %10.2f\n", m.epsilon, m.ok ? "ok" : "FAILED",
                m.steps, m.H0, m.H_end, m.runtime_s);
  for (const auto& m : r.members)
    if (!m.ok) std::printf("eps %g: %s\n", m.epsilon, m.error.c_str());
  if (!r.all_ok) return kDomain;
  if (r.fit)
    std::printf("slope %.4f (threshold %.2f, residual %.3e)\n", r.fit->slope,
                config.sweep.slope_threshold, r.fit->residual);
  else
    std::printf("slope: not available (H(t_end) = 0 for some member)\n");
  std::printf("monotone in eps: %s\n", r.monotone ? "yes" : "no");
  std::printf("gronwall C %.4e  K %.4e\n", r.gronwall_C, r.gronwall_K);
  if (r.ill_prepared) std::printf("ill-prepared: H(0) > 0, no eps-scaling expected\n");
  std::printf("%s\n", r.passed() ? "PASS" : "FAIL");
  return r.passed() ? kOk : kThreshold;
}

int check_identity_cmd(const std::string& path, bool mutate) {
  const RunConfig config = load_config(path);
  const auto& id = config.identity;
  IdentityOptions options;
  options.theta_friction_cross_terms = !mutate;
  bool pass = true;
  for (const auto& pair : builtin_manufactured_pairs()) {
    if (std::find(id.pairs.begin(), id.pairs.end(), pair.name) == id.pairs.end()) continue;
    const auto conv = identity_convergence(pair, id.ncells, id.dt, id.levels, options);
    std::printf("%s\n", pair.name.c_str());
    for (const auto& l : conv.levels)
      std::printf("  ncells %6zu  dt %.4e  defect %.4e  integrated %.4e\n", l.ncells, l.dt,
                  l.defect_l1, l.defect_integrated);
    for (double o : conv.orders) std::printf("  order %.3f\n", o);
    const bool ok = conv.min_order >= id.min_order;
    std::printf("  %s (min order %.3f, required %.2f)\n", ok ? "PASS" : "FAIL", conv.min_order,
                id.min_order);
    pass = pass && ok;
  }
  return pass ? kOk : kThreshold;
}

int check_thermo_cmd(const std::string& path, std::size_t samples, std::uint64_t seed) {
  const RunConfig config = path.empty() ? default_config() : load_config(path);
  const ThermoModel& thermo = config.thermo;
  thermo.validate();
  const StabilityReport st = check_stability(thermo, samples, seed);
  std::printf("stability: samples %zu  min (rho psi)_rr %.4e  max (rho psi)_tt %.4e  fd mismatch %.3e  %s\n",
              st.samples, st.min_rho_rho, st.max_theta_theta, st.max_fd_mismatch,
              st.passed ? "PASS" : "FAIL");

  // Gibbs-Duhem residual over random states.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(thermo.validity.gamma, thermo.validity.M);
  double gd = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double rho = draw(rng), theta = draw(rng);
    for (std::size_t i = 0; i < thermo.species(); ++i) {
      const auto e = eval_species(thermo, i, rho, theta);
      const double scale = std::max(1.0, std::abs(rho * e.mu));
      gd = std::max(gd, std::abs(rho * e.psi + e.p - rho * e.mu) / scale);
    }
  }
  const bool gd_ok = gd <= 1e-12;
  std::printf("gibbs-duhem: max relative residual %.3e  %s\n", gd, gd_ok ? "PASS" : "FAIL");

  const CoercivityReport co = sample_coercivity(thermo, samples, seed);
  std::printf("coercivity: samples %zu  min ratio %.4e  %s\n", co.samples, co.min_ratio,
              co.positive ? "PASS" : "FAIL");
  return (st.passed && gd_ok && co.positive) ? kOk : kThreshold;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frictionlab: multicomponent friction-limit lab"};
  app.require_subcommand(1);

  std::string config_path;
  std::string model = "class2";
  auto* sim = app.add_subcommand("simulate", "run one model to t_end");
  sim->add_option("--config", config_path, "YAML config")->required();
  sim->add_option("--model", model, "class1 or class2")
      ->check(CLI::IsMember({"class1", "class2"}));

  auto* pair = app.add_subcommand("paired", "run both models and report H(t)");
  pair->add_option("--config", config_path, "YAML config")->required();

  std::size_t workers = 0;
  auto* sw = app.add_subcommand("sweep", "epsilon sweep with log-log fit");
  sw->add_option("--config", config_path, "YAML config")->required();
  sw->add_option("--workers", workers, "worker threads (overrides sweep.workers)");

  bool mutate = false;
  auto* id = app.add_subcommand("check-identity", "relative entropy identity on manufactured pairs");
  id->add_option("--config", config_path, "YAML config")->required();
  id->add_flag("--drop-theta-cross-terms", mutate,
               "omit the (theta - theta_bar) friction terms (should fail)");

  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  auto* th = app.add_subcommand("check-thermo", "closure consistency and stability checks");
  th->add_option("--samples", samples, "number of random states")->check(CLI::PositiveNumber);
  th->add_option("--seed", seed, "random seed");
  th->add_option("--config", config_path, "YAML config (thermo block used)");

  auto* show = app.add_subcommand("show-config", "print the validated config with defaults filled in");
  show->add_option("--config", config_path, "YAML config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kValidation;
  }

  try {
    if (*sim) return simulate(config_path, model);
    if (*pair) return paired(config_path);
    if (*sw) return sweep(config_path, workers);
    if (*id) return check_identity_cmd(config_path, mutate);
    if (*th) return check_thermo_cmd(config_path, samples, seed);
    if (*show) {
      std::fputs(to_yaml(load_config(config_path)).c_str(), stdout);
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "invalid config:\n");
    for (const auto& issue : e.issues()) std::fprintf(stderr, "  %s\n", issue.c_str());
    return kValidation;
  } catch (const PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "domain failure: %s\n", e.what());
    return kDomain;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kDomain;
  }
  return kOk;
}
