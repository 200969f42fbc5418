#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "frictionlab/config.hpp"
#include "frictionlab/diagnostics.hpp"
#include "frictionlab/fit.hpp"

namespace frictionlab {

enum class Model { class1, class2 };
std::string to_string(Model model);

struct RunOptions {
  bool write_files = true;
  std::optional<std::string> directory;  // overrides outputs.directory
  std::optional<std::size_t> workers;    // overrides sweep.workers
};

/// Per-step entropy bookkeeping of one model. `violation` accumulates
/// max(0, -(S_{k+1} - S_k)); `consistency` accumulates
/// |S_{k+1} - S_k - dt P_{k+1}|, the gap between the discrete entropy change
/// and the discrete production terms. For smooth data the gap is the
/// numerical dissipation of the scheme and shrinks like O(dx).
struct EntropyStats {
  double initial = 0.0;
  double final = 0.0;
  double min_conduction = 0.0;  // minimum over steps of the production terms
  double min_friction = 0.0;
  double violation = 0.0;
  double consistency = 0.0;
  std::size_t clamped_cells = 0;
};

struct Conservation {
  std::vector<double> mass0, mass1;  // per species
  double momentum0 = 0.0, momentum1 = 0.0;
  double energy0 = 0.0, energy1 = 0.0;
  // Momentum drift is measured against max(|P0|, sum |m| dx) at t = 0.
  double momentum_scale = 0.0;
  double max_mass_drift() const;
  double momentum_drift() const;
  double energy_drift() const;
};

struct SingleRunResult {
  Model model = Model::class2;
  double epsilon = 0.0;
  std::size_t steps = 0;
  double t_final = 0.0;
  EntropyStats entropy;
  Conservation conservation;
  std::string snapshots_csv;
  std::string entropy_csv;
};

/// Runs one model to t_end. Writes <model>_snapshots.csv and
/// <model>_entropy.csv when file output is on. Domain and CFL failures
/// propagate as DomainError.
SingleRunResult run_single(const RunConfig& config, Model model, double epsilon,
                           const RunOptions& options = {});
// Same, with an explicit step budget: stops after max_steps steps even
// before t_end.
SingleRunResult run_steps(const RunConfig& config, Model model, double epsilon,
                          std::size_t max_steps, const RunOptions& options = {});

struct PairedRunResult {
  double epsilon = 0.0;
  std::size_t steps = 0;
  std::vector<RelEntropyReport> series;
  EntropyStats entropy_class1;
  EntropyStats entropy_class2;
  std::string relentropy_csv;
  double H0() const { return series.empty() ? 0.0 : series.front().H; }
  double H_end() const { return series.empty() ? 0.0 : series.back().H; }
};

/// Class-II and Class-I side by side with a common dt (minimum of both
/// CFL contracts). One report row per output time; R/Q norms come from the
/// last three Class-I steps (zero at t = 0). Writes relentropy.csv and,
/// when snapshots are on, class1_snapshots.csv / class2_snapshots.csv.
PairedRunResult run_paired(const RunConfig& config, double epsilon,
                           const RunOptions& options = {});

struct SweepMember {
  double epsilon = 0.0;
  bool ok = false;
  std::string error;
  double H0 = 0.0;
  double H_end = 0.0;
  std::size_t steps = 0;
  double runtime_s = 0.0;
  PairedRunResult run;
};

struct SweepResult {
  std::vector<SweepMember> members;  // in config order
  bool all_ok = false;
  bool ill_prepared = false;  // some member started with H(0) > 0
  std::optional<RateFit> fit;
  bool slope_pass = false;
  bool monotone = false;
  double gronwall_C = 0.0;
  double gronwall_K = 0.0;
  bool passed() const { return all_ok && !ill_prepared && slope_pass; }
};

/// Needs at least three epsilon values spanning two decades
/// (PreconditionError otherwise). Members run on `workers` threads; results
/// and files do not depend on the worker count. Writes sweep.csv, one
/// eps_<k>/ directory per member and sweep_timing.csv (wall clock, not
/// deterministic).
SweepResult run_sweep(const RunConfig& config, const RunOptions& options = {});

/// Empirical Gronwall constants: C is the largest least-squares growth rate
/// of log H(t) among members, K the smallest constant with
/// H(t) <= (H(0) + K eps) e^{C t} on every row.
void fit_gronwall(SweepResult& result);

struct ResidualSample {
  double epsilon = 0.0;
  double R_norm = 0.0;
  double Q_norm = 0.0;
};

/// Class-I run of `steps` steps (at least two) from the ic block; residuals
/// from the last three states.
ResidualSample residual_sample(const RunConfig& config, double epsilon,
                               std::size_t steps = 2);

}  // namespace frictionlab
