#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "frictionlab/grid.hpp"
#include "frictionlab/maxwell_stefan.hpp"
#include "frictionlab/state.hpp"
#include "frictionlab/thermo.hpp"

namespace frictionlab {

/// Class-II-comparable fields of a Class-I state: v_i = v + u_i.
StateII lift(const StateI& state, const ThermoModel& thermo);

struct RelEntropyReport {
  double t = 0.0;
  double H = 0.0;
  double friction_dissipation = 0.0;
  double conduction_dissipation = 0.0;
  double coercivity_margin = 0.0;
  double R_norm = 0.0;
  double Q_norm = 0.0;
};

/// Pointwise thermal part of the relative entropy:
///   sum_i (rho_i psi_i)(w|w_bar) + (rho eta - rho_bar eta_bar)(theta - theta_bar).
double thermal_relative_entropy(const ThermoModel& thermo,
                                std::span<const double> rho, double theta,
                                std::span<const double> rho_bar,
                                double theta_bar);

/// Full pointwise integrand: kinetic part 1/2 sum rho_i |v_i - v_bar_i|^2
/// plus the thermal part.
double relative_entropy_density(const ThermoModel& thermo,
                                std::span<const double> rho,
                                std::span<const double> v, double theta,
                                std::span<const double> rho_bar,
                                std::span<const double> v_bar,
                                double theta_bar);

/// H(w|w_bar) summed over the torus together with the two dissipation
/// integrals and the coercivity margin
///   min_cells [thermal part - C (sum |rho_i - rho_bar_i|^2 + |theta - theta_bar|^2)].
/// Residual norms are left at zero; the paired driver fills them in.
/// Throws PreconditionError on shape mismatch.
RelEntropyReport relative_entropy(const StateII& state, const StateII& lifted,
                                  const ThermoModel& thermo, const Grid1D& grid,
                                  const FrictionMatrix& friction,
                                  const SourceConfig& sources,
                                  double coercivity_constant);

struct CoercivityReport {
  std::size_t samples = 0;
  double min_ratio = 0.0;  // inf of thermal part / (sum |d rho|^2 + |d theta|^2)
  bool positive = false;
};

/// Samples state pairs with rho_i in [gamma, M/n] and theta in [gamma, M].
CoercivityReport sample_coercivity(const ThermoModel& thermo, std::size_t samples,
                                   std::uint64_t seed);

struct EntropyProduction {
  double conduction = 0.0;  // int kappa |grad theta|^2 / theta^2
  double friction = 0.0;    // (1/2 eps) int sum sum b_ij rho_i rho_j |w_i - w_j|^2
  double supply = 0.0;      // int rho r / theta
  double total() const { return conduction + friction + supply; }
};

// Class-II: w_i = v_i.
EntropyProduction entropy_production(const StateII& state, const Grid1D& grid,
                                     const ThermoModel& thermo,
                                     const FrictionMatrix& friction,
                                     const SourceConfig& sources, double t);
// Class-I: w_i = u_i.
EntropyProduction entropy_production(const StateI& state, const Grid1D& grid,
                                     const ThermoModel& thermo,
                                     const FrictionMatrix& friction,
                                     const SourceConfig& sources, double t);

/// int sum rho_i eta_i. Class-II densities below the vacuum floor are
/// clamped; `clamped_cells` counts cells where that happened.
double total_entropy(const StateII& state, const Grid1D& grid,
                     const ThermoModel& thermo, std::size_t* clamped_cells = nullptr);
double total_entropy(const StateI& state, const Grid1D& grid,
                     const ThermoModel& thermo);

}  // namespace frictionlab
