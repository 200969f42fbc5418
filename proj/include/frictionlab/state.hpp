#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "frictionlab/grid.hpp"
#include "frictionlab/thermo.hpp"

namespace frictionlab {

/// Class-II unknowns: per-species density and velocity, common temperature.
/// Species fields are stored species-major (index i * ncells + j). The
/// conservative caches (rho_i v_i and total energy) are refreshed by
/// sync_conservative and read back by sync_primitive.
struct StateII {
  std::size_t n = 0;
  std::size_t ncells = 0;
  std::vector<double> rho;
  std::vector<double> v;
  std::vector<double> theta;
  std::vector<double> momentum;  // rho_i v_i
  std::vector<double> energy;    // rho e + 1/2 sum rho_j v_j^2

  StateII() = default;
  StateII(std::size_t species, std::size_t cells);

  double& rho_at(std::size_t i, std::size_t j) { return rho[i * ncells + j]; }
  double rho_at(std::size_t i, std::size_t j) const { return rho[i * ncells + j]; }
  double& v_at(std::size_t i, std::size_t j) { return v[i * ncells + j]; }
  double v_at(std::size_t i, std::size_t j) const { return v[i * ncells + j]; }

  // Cell-local copies (size n) of species densities and velocities.
  void cell_rho(std::size_t j, std::span<double> out) const;
  void cell_v(std::size_t j, std::span<double> out) const;

  double total_density(std::size_t j) const;
  double barycentric_velocity(std::size_t j) const;
};

void sync_conservative(StateII& state, const ThermoModel& thermo);
// Recovers v_i = m_i / rho_i (zero in vacuum cells) and theta from energy.
void sync_primitive(StateII& state, const ThermoModel& thermo);

/// Class-I unknowns: species densities, barycentric velocity, temperature,
/// plus the diffusional velocities u_i, recomputed from the state.
struct StateI {
  std::size_t n = 0;
  std::size_t ncells = 0;
  std::vector<double> rho;
  std::vector<double> v;
  std::vector<double> theta;
  std::vector<double> u;

  StateI() = default;
  StateI(std::size_t species, std::size_t cells);

  double& rho_at(std::size_t i, std::size_t j) { return rho[i * ncells + j]; }
  double rho_at(std::size_t i, std::size_t j) const { return rho[i * ncells + j]; }
  double& u_at(std::size_t i, std::size_t j) { return u[i * ncells + j]; }
  double u_at(std::size_t i, std::size_t j) const { return u[i * ncells + j]; }

  void cell_rho(std::size_t j, std::span<double> out) const;
  double total_density(std::size_t j) const;
};

/// Domain report for the first offending cell, or empty when the state lies
/// in the validity domain.
struct DomainViolation {
  bool violated = false;
  std::size_t cell = 0;
  std::string what;
};

DomainViolation check_domain(const StateII& state, const ThermoModel& thermo);
DomainViolation check_domain(const StateI& state, const ThermoModel& thermo);

// Integrals over the torus (cell sums times dx).
double species_mass(const StateII& state, const Grid1D& grid, std::size_t i);
double total_momentum(const StateII& state, const Grid1D& grid);
double total_energy(const StateII& state, const Grid1D& grid);
double species_mass(const StateI& state, const Grid1D& grid, std::size_t i);
double total_momentum(const StateI& state, const Grid1D& grid);
double total_energy(const StateI& state, const Grid1D& grid,
                    const ThermoModel& thermo);

}  // namespace frictionlab
