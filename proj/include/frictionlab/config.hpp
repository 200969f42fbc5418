#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "frictionlab/class2_solver.hpp"
#include "frictionlab/grid.hpp"
#include "frictionlab/maxwell_stefan.hpp"
#include "frictionlab/thermo.hpp"

namespace frictionlab {

enum class IcPreset { uniform, sine, gaussian_bump, two_state };

/// Initial data for the Class-I state; the Class-II state is derived from
/// it (lifted when well_prepared, otherwise aligned at the barycentric
/// velocity) and then offset by velocity_mismatch.
struct IcConfig {
  IcPreset preset = IcPreset::sine;
  bool well_prepared = true;
  double velocity_mismatch = 0.0;

  // Base state (outer state for two_state).
  std::vector<double> rho;  // empty means 1.0 per species
  double v = 0.0;
  double theta = 1.0;

  // sine: base + amplitude * sin(2 pi k x / L + phase_i), phase_i = i.
  // gaussian_bump: base + amplitude * exp(-((x - center)/width)^2 / 2).
  std::vector<double> rho_amplitude;  // empty means zeros
  double v_amplitude = 0.0;
  double theta_amplitude = 0.0;
  int wavenumber = 1;
  double center = 0.5;  // fraction of the domain length
  double width = 0.1;   // fraction of the domain length

  // two_state: inner state on [L/4, 3L/4), tanh transition of `width`.
  std::vector<double> rho_inner;
  double v_inner = 0.0;
  double theta_inner = 1.0;

  bool operator==(const IcConfig&) const = default;
};

struct TimeConfig {
  double t_end = 0.1;
  double cfl_number = 0.5;
  double snapshot_interval = 0.0;  // 0 means only t = 0 and t_end
  std::optional<double> dt;        // fixed step; the CFL contract still applies

  bool operator==(const TimeConfig&) const = default;
};

struct OutputConfig {
  std::string directory = "out";
  std::vector<std::string> formats{"csv"};
  bool snapshots = true;

  bool operator==(const OutputConfig&) const = default;
};

struct SweepConfig {
  double slope_threshold = 0.8;
  std::size_t workers = 1;
  double monotonicity_slack = 0.05;

  bool operator==(const SweepConfig&) const = default;
};

struct DiagnosticsConfig {
  double coercivity_constant = 0.0;  // C in the coercivity margin
  bool residuals = true;

  bool operator==(const DiagnosticsConfig&) const = default;
};

struct IdentityConfig {
  std::vector<std::string> pairs{"plain_n2", "body_force_n3", "heat_supply_n2"};
  std::size_t ncells = 32;
  double dt = 0.02;
  std::size_t levels = 3;
  double min_order = 0.9;

  bool operator==(const IdentityConfig&) const = default;
};

struct RunConfig {
  ThermoModel thermo;
  std::vector<double> friction_upper;  // b_12, b_13, ..., b_23, ...
  std::optional<double> epsilon;
  std::vector<double> epsilon_sweep;
  FrictionIntegrator integrator = FrictionIntegrator::exponential;
  Grid1D grid{128, 1.0};
  IcConfig ic;
  TimeConfig time;
  SourceConfig sources;
  OutputConfig outputs;
  SweepConfig sweep;
  DiagnosticsConfig diagnostics;
  IdentityConfig identity;

  std::size_t species() const { return thermo.species(); }
  FrictionMatrix friction(double eps) const;
  // epsilon if set, else the first sweep entry.
  double primary_epsilon() const;

  bool operator==(const RunConfig&) const = default;
};

/// Defaults: two species with R = (1, 0.5), c = (1.5, 2.5), b_12 = 1.
RunConfig default_config();

/// Parses YAML text. Every problem (unknown key, wrong type, violated
/// invariant) is collected and reported at once in a ConfigError.
RunConfig parse_config(const std::string& yaml_text);
RunConfig load_config(const std::string& path);

/// Full, explicit serialization; parse_config(to_yaml(c)) == c.
std::string to_yaml(const RunConfig& config);

/// Checks cross-block invariants; returns every violation.
std::vector<std::string> validate(const RunConfig& config);

std::string to_string(IcPreset preset);
std::string to_string(FrictionIntegrator integrator);

}  // namespace frictionlab
