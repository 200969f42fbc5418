#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "frictionlab/grid.hpp"
#include "frictionlab/maxwell_stefan.hpp"
#include "frictionlab/thermo.hpp"

namespace frictionlab {

/// Analytic fields (rho_1..rho_n, v_1..v_n, theta) built from waveforms.
struct ManufacturedFields {
  std::vector<Waveform> rho;
  std::vector<Waveform> v;
  Waveform theta;

  bool operator==(const ManufacturedFields&) const = default;
};

/// A pair (w, w_bar) of smooth periodic fields on [0, length). Neither field
/// solves the Class-II equations; their residuals are evaluated in closed
/// form and carried as forcing terms when the identity is checked.
struct ManufacturedPair {
  std::string name;
  ThermoModel thermo;
  FrictionMatrix friction;
  SourceConfig sources;
  ManufacturedFields omega;
  ManufacturedFields omega_bar;
  double length = 1.0;
  double time = 0.3;  // evaluation time

  // Throws DomainError when either field leaves the validity domain on the
  // sampled points; PreconditionError on shape mismatch.
  void validate(std::size_t samples = 257) const;
};

struct IdentityOptions {
  // Mutation switch: drop the three friction cross terms carrying
  // (theta - theta_bar).
  bool theta_friction_cross_terms = true;
  // Forcing bookkeeping for the residuals of w and w_bar.
  bool forcing_corrections = true;
};

struct IdentityResult {
  std::size_t ncells = 0;
  double dt = 0.0;
  double defect_l1 = 0.0;          // sum_j |LHS - RHS| dx, pointwise form
  double defect_integrated = 0.0;  // |sum_j (LHS - RHS) dx|, divergences drop
  double scale = 0.0;              // sum_j |d_t h| dx, for relative reporting
};

/// Evaluates d_t h + d_x q against the relative entropy right-hand side at
/// the cell centers of a uniform grid. d_t h, d_x q and the conduction
/// divergence use central differences with steps dt and dx; everything else
/// is closed form.
IdentityResult check_identity(const ManufacturedPair& pair, std::size_t ncells,
                              double dt, const IdentityOptions& options = {});

struct IdentityConvergence {
  std::vector<IdentityResult> levels;
  std::vector<double> orders;  // log2 ratios of successive defect_l1
  double min_order = 0.0;
};

/// Runs `levels` refinements starting from (ncells, dt), halving both each
/// time.
IdentityConvergence identity_convergence(const ManufacturedPair& pair,
                                         std::size_t ncells, double dt,
                                         std::size_t levels,
                                         const IdentityOptions& options = {});

/// Three built-in pairs: plain n = 2, n = 3 with body forces, n = 2 with a
/// heat supply and temperature-dependent conductivity.
std::vector<ManufacturedPair> builtin_manufactured_pairs();

}  // namespace frictionlab
