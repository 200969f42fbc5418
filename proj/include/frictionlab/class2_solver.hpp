#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "frictionlab/grid.hpp"
#include "frictionlab/maxwell_stefan.hpp"
#include "frictionlab/state.hpp"
#include "frictionlab/thermo.hpp"

namespace frictionlab {

/// Integrator for the cell-local friction relaxation
///   d(rho_i v_i)/dt = -(theta/eps) sum_j b_ij rho_i rho_j (v_i - v_j).
/// Both freeze theta at the substep midpoint temperature and iterate that
/// temperature against exact total-energy conservation.
enum class FrictionIntegrator {
  exponential,        // exact propagator of the frozen linear system
  implicit_midpoint,  // (M + h/2 K) v1 = (M - h/2 K) v0
};

struct FrictionSubstepResult {
  int iterations = 0;
  double kinetic_drop = 0.0;   // kinetic energy lost to friction
  double internal_gain = 0.0;  // (sum rho_i c_i) * (theta_new - theta_old)
};

inline constexpr int kFrictionMaxIterations = 50;
inline constexpr double kFrictionTolerance = 1e-12;

/// Advances one cell's velocities and temperature over `dt` with densities
/// frozen. Momentum and total energy are conserved; dissipated kinetic
/// energy heats the mixture. Species below the vacuum floor do not take
/// part. Throws StiffnessError if the temperature iteration does not
/// converge in kFrictionMaxIterations.
///
/// Without `v_start` this is pure relaxation of `v`. With `v_start`, the
/// relaxation starts from v_start under the frozen force
/// M (v - v_start) / dt, i.e. `v` holds the velocities an explicit update
/// produced without friction; `theta` must match `v`.
FrictionSubstepResult friction_substep(std::span<const double> rho,
                                       std::span<double> v, double& theta,
                                       const ThermoModel& thermo,
                                       const FrictionMatrix& friction,
                                       double dt, FrictionIntegrator integrator,
                                       std::span<const double> v_start = {});

/// First-order finite-volume solver for the Class-II model on a periodic
/// grid. Each step is an explicit Rusanov update of the species
/// mass/momentum balances and the mixture energy balance (central heat
/// conduction, body-force / heat-supply sources), followed by the stiff
/// friction relaxation driven by the frozen transport force. For dt >> eps
/// the relative velocities land on the Maxwell-Stefan balance instead of
/// collapsing to zero.
class Class2Solver {
 public:
  Class2Solver(Grid1D grid, ThermoModel thermo, FrictionMatrix friction,
               SourceConfig sources,
               FrictionIntegrator integrator = FrictionIntegrator::exponential);

  /// One full step from time t. Throws CflError when dt exceeds the
  /// admissible step and DomainError (with the cell index) when the result
  /// leaves the validity domain.
  void step(StateII& state, double t, double dt) const;

  /// cfl_number * min(dx / (|v_i| + a_i), dx^2 min(sum rho_j c_j) / (2 kappa_max)).
  double cfl_dt(const StateII& state, double cfl_number) const;

  // Empty v_start means pure relaxation.
  void friction_step(StateII& state, double dt,
                     std::span<const double> v_start = {}) const;
  void transport_step(StateII& state, double t, double dt) const;

  const Grid1D& grid() const { return grid_; }
  const ThermoModel& thermo() const { return thermo_; }
  const FrictionMatrix& friction() const { return friction_; }
  const SourceConfig& sources() const { return sources_; }
  FrictionIntegrator integrator() const { return integrator_; }

 private:
  Grid1D grid_;
  ThermoModel thermo_;
  FrictionMatrix friction_;
  SourceConfig sources_;
  FrictionIntegrator integrator_;
};

}  // namespace frictionlab
