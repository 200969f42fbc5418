#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace frictionlab {

/// Box [gamma, M] that bounds species density, total density and
/// temperature in every admissible state.
struct ValidityDomain {
  double gamma = 0.05;
  double M = 20.0;

  bool contains(double value) const { return value >= gamma && value <= M; }

  bool operator==(const ValidityDomain&) const = default;
};

/// Ideal-gas mixture closure.
///
/// Each species carries the Helmholtz free energy density
///   rho_i psi_i = R_i theta rho_i log(rho_i) - c_i theta rho_i log(theta),
/// from which chemical potential, entropy, internal energy and partial
/// pressure follow by differentiation. All derivatives used by the solvers
/// are closed form; finite differences appear only in tests.
struct ThermoModel {
  std::vector<double> R;  // specific gas constants
  std::vector<double> c;  // specific heats
  ValidityDomain validity;
  double rho_floor = 1e-12;  // vacuum clamp applied before taking logs

  std::size_t species() const { return R.size(); }

  // Throws DomainError naming every broken invariant.
  void validate() const;

  bool operator==(const ThermoModel&) const = default;
};

struct SpeciesThermoEval {
  double psi = 0.0;  // specific free energy
  double mu = 0.0;   // chemical potential
  double eta = 0.0;  // specific entropy
  double e = 0.0;    // specific internal energy
  double p = 0.0;    // partial pressure
};

/// Species-local thermodynamic point (rho_i, theta).
struct PartialState {
  double rho = 0.0;
  double theta = 0.0;
};

// Throws DomainError if rho or theta is not strictly positive.
SpeciesThermoEval eval_species(const ThermoModel& model, std::size_t i,
                               double rho, double theta);

// Closed-form pieces, no argument checking (hot loops).
double free_energy_density(const ThermoModel& model, std::size_t i, double rho,
                           double theta);
double entropy_density(const ThermoModel& model, std::size_t i, double rho,
                       double theta);
double chemical_potential(const ThermoModel& model, std::size_t i, double rho,
                          double theta);
double specific_entropy(const ThermoModel& model, std::size_t i, double rho,
                        double theta);
inline double internal_energy_density(const ThermoModel& model, std::size_t i,
                                      double rho, double theta) {
  return model.c[i] * rho * theta;
}
inline double partial_pressure(const ThermoModel& model, std::size_t i,
                               double rho, double theta) {
  return model.R[i] * rho * theta;
}

// Second derivatives of rho_i psi_i entering the Gibbs stability conditions.
double free_energy_rho_rho(const ThermoModel& model, std::size_t i, double rho,
                           double theta);
double free_energy_theta_theta(const ThermoModel& model, std::size_t i,
                               double rho, double theta);

// Per-species signal-speed proxy sqrt(R theta (1 + R/c)).
double sound_speed(const ThermoModel& model, std::size_t i, double theta);

// Sum_i rho_i c_i: the volumetric heat capacity, d(rho e)/d theta.
double heat_capacity(const ThermoModel& model, std::span<const double> rho);

// Applies the vacuum floor; sets `clamped` when the floor was active.
double clamp_density(const ThermoModel& model, double rho, bool& clamped);

/// Second-order Taylor remainder of rho_i psi_i at omega_bar, evaluated at
/// omega. Requires theta, theta_bar, rho_bar > 0 and rho >= 0.
double relative_free_energy(const ThermoModel& model, std::size_t i,
                            PartialState omega, PartialState omega_bar);

enum class RelativeKind { pressure, entropy_density };

/// Second-order Taylor remainder of p_i or rho_i eta_i.
double relative_quantity(RelativeKind kind, const ThermoModel& model,
                         std::size_t i, PartialState omega,
                         PartialState omega_bar);

struct StabilityReport {
  std::size_t samples = 0;
  double min_rho_rho = 0.0;      // min over samples of (rho psi)_{rho rho}
  double max_theta_theta = 0.0;  // max over samples of (rho psi)_{theta theta}
  double max_fd_mismatch = 0.0;  // closed form vs central differences, relative
  bool passed = false;
};

/// Samples the validity domain (deterministic in `seed`) and checks both
/// Gibbs stability signs by closed form and by central differences.
/// Throws PreconditionError when samples == 0.
StabilityReport check_stability(const ThermoModel& model, std::size_t samples,
                                std::uint64_t seed);

}  // namespace frictionlab
