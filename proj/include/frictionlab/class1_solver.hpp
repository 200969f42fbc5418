#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "frictionlab/grid.hpp"
#include "frictionlab/maxwell_stefan.hpp"
#include "frictionlab/state.hpp"
#include "frictionlab/thermo.hpp"

namespace frictionlab {

/// First-order finite-volume solver for the Class-I (barycentric) model with
/// Maxwell-Stefan diffusional velocities on a periodic grid.
///
/// The diffusional velocities are recomputed from the state every step
/// (quasi-static closure) using central-difference partial-pressure
/// gradients. Diffusive fluxes rho_i u_i are averaged to faces, so they sum
/// to zero face by face and total mass is transported by the Rusanov part
/// alone.
class Class1Solver {
 public:
  Class1Solver(Grid1D grid, ThermoModel thermo, FrictionMatrix friction,
               SourceConfig sources);

  /// Recomputes state.u at time t. Errors from the Maxwell-Stefan solve are
  /// rethrown with the cell index.
  void update_diffusion(StateI& state, double t) const;

  /// One forward-Euler step; state.u must be current on entry and is current
  /// on exit.
  void step(StateI& state, double t, double dt) const;

  /// Class-II contract applied with species velocities v + u_i, further
  /// capped by the explicit limit of the Maxwell-Stefan diffusion.
  double cfl_dt(const StateI& state, double cfl_number) const;

  const Grid1D& grid() const { return grid_; }
  const ThermoModel& thermo() const { return thermo_; }
  const FrictionMatrix& friction() const { return friction_; }
  const SourceConfig& sources() const { return sources_; }

 private:
  Grid1D grid_;
  ThermoModel thermo_;
  FrictionMatrix friction_;
  SourceConfig sources_;
};

/// Reformulation residuals of a Class-I state viewed as an approximate
/// Class-II solution:
///   R_i = -d_x(rho_i u_i) v + d_t(rho_i u_i) + 2 d_x(rho_i u_i v) + d_x(rho_i u_i^2)
///   Q   = d_t(1/2 sum rho_j u_j^2) + d_x(1/2 sum rho_j u_j^3)
///         + d_x(3/2 sum rho_j u_j^2 v)
/// evaluated at the middle of three snapshots by central differences.
struct Residuals {
  std::size_t n = 0;
  std::size_t ncells = 0;
  std::vector<double> R;  // species-major, n * ncells
  std::vector<double> Q;  // ncells
  double R_norm = 0.0;    // (sum_i sum_j R_ij^2 dx)^(1/2)
  double Q_norm = 0.0;    // (sum_j Q_j^2 dx)^(1/2)
};

/// `history` holds three snapshots at `times` (strictly increasing); the
/// time derivative uses the three-point formula, which is the centered
/// difference for equal spacing. Throws PreconditionError for any other
/// arity or non-increasing times.
Residuals residuals(std::span<const StateI> history,
                    std::span<const double> times, const Grid1D& grid);

}  // namespace frictionlab
