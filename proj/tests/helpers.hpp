#pragma once

#include <cmath>
#include <numbers>

#include "frictionlab/config.hpp"
#include "frictionlab/state.hpp"

namespace testing {

inline frictionlab::ThermoModel thermo2() {
  frictionlab::ThermoModel t;
  t.R = {1.0, 0.5};
  t.c = {1.5, 2.5};
  return t;
}

// Smooth periodic n = 2 data, well inside the validity box.
inline frictionlab::RunConfig smooth_config(std::size_t ncells = 64, double eps = 1e-2) {
  frictionlab::RunConfig c = frictionlab::default_config();
  c.grid.ncells = ncells;
  c.epsilon = eps;
  c.ic.preset = frictionlab::IcPreset::sine;
  c.ic.rho = {1.0, 1.0};
  c.ic.rho_amplitude = {0.2, -0.1};
  c.ic.v_amplitude = 0.1;
  c.ic.theta_amplitude = 0.1;
  c.time.t_end = 0.05;
  c.outputs.snapshots = false;
  return c;
}

inline double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace testing
