#include "frictionlab/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "frictionlab/errors.hpp"

namespace frictionlab {

void ThermoModel::validate() const {
  std::vector<std::string> issues;
  if (R.empty()) issues.emplace_back("species count must be at least 1");
  if (R.size() != c.size())
    issues.emplace_back("R and c must have the same length");
  for (std::size_t i = 0; i < R.size(); ++i) {
    if (!(R[i] > 0.0))
      issues.push_back("R[" + std::to_string(i) + "] must be positive");
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!(c[i] > 0.0))
      issues.push_back("c[" + std::to_string(i) + "] must be positive");
  }
  if (!(validity.gamma > 0.0 && validity.gamma < validity.M))
    issues.emplace_back("validity domain requires 0 < gamma < M");
  if (!(rho_floor > 0.0)) issues.emplace_back("rho_floor must be positive");
  if (!issues.empty()) {
    std::string msg = "invalid thermo model:";
    for (const auto& s : issues) msg += " " + s + ";";
    throw DomainError(msg);
  }
}

SpeciesThermoEval eval_species(const ThermoModel& model, std::size_t i,
                               double rho, double theta) {
  if (!(rho > 0.0))
    throw DomainError("eval_species: rho_" + std::to_string(i + 1) +
                      " must be positive, got " + std::to_string(rho));
  if (!(theta > 0.0))
    throw DomainError("eval_species: theta must be positive, got " +
                      std::to_string(theta));
  const double R = model.R[i];
  const double c = model.c[i];
  const double log_rho = std::log(rho);
  const double log_theta = std::log(theta);
  SpeciesThermoEval out;
  out.psi = R * theta * log_rho - c * theta * log_theta;
  out.mu = R * theta * (log_rho + 1.0) - c * theta * log_theta;
  out.eta = -R * log_rho + c * (log_theta + 1.0);
  out.e = out.psi + theta * out.eta;
  // Gibbs-Duhem: rho psi + p = rho mu.
  out.p = rho * out.mu - rho * out.psi;
  return out;
}

double free_energy_density(const ThermoModel& model, std::size_t i, double rho,
                           double theta) {
  if (rho == 0.0) return 0.0;
  return rho * theta * (model.R[i] * std::log(rho) - model.c[i] * std::log(theta));
}

double entropy_density(const ThermoModel& model, std::size_t i, double rho,
                       double theta) {
  if (rho == 0.0) return 0.0;
  return rho * specific_entropy(model, i, rho, theta);
}

double chemical_potential(const ThermoModel& model, std::size_t i, double rho,
                          double theta) {
  return model.R[i] * theta * (std::log(rho) + 1.0) -
         model.c[i] * theta * std::log(theta);
}

double specific_entropy(const ThermoModel& model, std::size_t i, double rho,
                        double theta) {
  return -model.R[i] * std::log(rho) + model.c[i] * (std::log(theta) + 1.0);
}

double free_energy_rho_rho(const ThermoModel& model, std::size_t i, double rho,
                           double theta) {
  return model.R[i] * theta / rho;
}

double free_energy_theta_theta(const ThermoModel& model, std::size_t i,
                               double rho, double theta) {
  return -model.c[i] * rho / theta;
}

double sound_speed(const ThermoModel& model, std::size_t i, double theta) {
  const double R = model.R[i];
  return std::sqrt(R * theta * (1.0 + R / model.c[i]));
}

double heat_capacity(const ThermoModel& model, std::span<const double> rho) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) sum += rho[i] * model.c[i];
  return sum;
}

double clamp_density(const ThermoModel& model, double rho, bool& clamped) {
  if (rho < model.rho_floor) {
    clamped = true;
    return model.rho_floor;
  }
  return rho;
}

namespace {

void check_relative_args(const char* what, PartialState omega,
                         PartialState omega_bar) {
  if (!(omega.theta > 0.0) || !(omega_bar.theta > 0.0))
    throw DomainError(std::string(what) + ": temperatures must be positive");
  if (!(omega.rho >= 0.0))
    throw DomainError(std::string(what) + ": rho must be nonnegative");
  if (!(omega_bar.rho > 0.0))
    throw DomainError(std::string(what) + ": rho_bar must be positive");
}

}  // namespace

double relative_free_energy(const ThermoModel& model, std::size_t i,
                            PartialState omega, PartialState omega_bar) {
  check_relative_args("relative_free_energy", omega, omega_bar);
  const double f = free_energy_density(model, i, omega.rho, omega.theta);
  const double f_bar = free_energy_density(model, i, omega_bar.rho, omega_bar.theta);
  const double f_rho = chemical_potential(model, i, omega_bar.rho, omega_bar.theta);
  // (rho psi)_theta = -rho eta
  const double f_theta = -entropy_density(model, i, omega_bar.rho, omega_bar.theta);
  return f - f_bar - f_rho * (omega.rho - omega_bar.rho) -
         f_theta * (omega.theta - omega_bar.theta);
}

double relative_quantity(RelativeKind kind, const ThermoModel& model,
                         std::size_t i, PartialState omega,
                         PartialState omega_bar) {
  check_relative_args("relative_quantity", omega, omega_bar);
  const double d_rho = omega.rho - omega_bar.rho;
  const double d_theta = omega.theta - omega_bar.theta;
  const double R = model.R[i];
  const double c = model.c[i];
  switch (kind) {
    case RelativeKind::pressure: {
      const double p = partial_pressure(model, i, omega.rho, omega.theta);
      const double p_bar = partial_pressure(model, i, omega_bar.rho, omega_bar.theta);
      const double p_rho = R * omega_bar.theta;
      const double p_theta = R * omega_bar.rho;
      return p - p_bar - p_rho * d_rho - p_theta * d_theta;
    }
    case RelativeKind::entropy_density: {
      const double s = entropy_density(model, i, omega.rho, omega.theta);
      const double s_bar = entropy_density(model, i, omega_bar.rho, omega_bar.theta);
      const double s_rho = -R * (std::log(omega_bar.rho) + 1.0) +
                           c * (std::log(omega_bar.theta) + 1.0);
      const double s_theta = c * omega_bar.rho / omega_bar.theta;
      return s - s_bar - s_rho * d_rho - s_theta * d_theta;
    }
  }
  return 0.0;
}

StabilityReport check_stability(const ThermoModel& model, std::size_t samples,
                                std::uint64_t seed) {
  if (samples == 0)
    throw PreconditionError("check_stability: at least one sample is required");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(model.validity.gamma,
                                              model.validity.M);
  StabilityReport report;
  report.samples = samples;
  report.min_rho_rho = std::numeric_limits<double>::infinity();
  report.max_theta_theta = -std::numeric_limits<double>::infinity();
  bool fd_signs_ok = true;
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < model.species(); ++i) {
      const double rho = draw(rng);
      const double theta = draw(rng);
      const double f_rr = free_energy_rho_rho(model, i, rho, theta);
      const double f_tt = free_energy_theta_theta(model, i, rho, theta);
      report.min_rho_rho = std::min(report.min_rho_rho, f_rr);
      report.max_theta_theta = std::max(report.max_theta_theta, f_tt);

      const double hr = 1e-3 * rho;
      const double ht = 1e-3 * theta;
      const double f0 = free_energy_density(model, i, rho, theta);
      const double fd_rr = (free_energy_density(model, i, rho + hr, theta) -
                            2.0 * f0 +
                            free_energy_density(model, i, rho - hr, theta)) /
                           (hr * hr);
      const double fd_tt = (free_energy_density(model, i, rho, theta + ht) -
                            2.0 * f0 +
                            free_energy_density(model, i, rho, theta - ht)) /
                           (ht * ht);
      if (!(fd_rr > 0.0) || !(fd_tt < 0.0)) fd_signs_ok = false;
      report.max_fd_mismatch =
          std::max({report.max_fd_mismatch,
                    std::abs(fd_rr - f_rr) / std::max(1.0, std::abs(f_rr)),
                    std::abs(fd_tt - f_tt) / std::max(1.0, std::abs(f_tt))});
    }
  }
  report.passed = report.min_rho_rho > 0.0 && report.max_theta_theta < 0.0 &&
                  fd_signs_ok;
  return report;
}

}  // namespace frictionlab
