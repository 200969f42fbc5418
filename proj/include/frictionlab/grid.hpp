#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "frictionlab/thermo.hpp"

namespace frictionlab {

/// Uniform periodic 1D grid on [0, length); cell j has center (j + 1/2) dx.
struct Grid1D {
  std::size_t ncells = 0;
  double length = 1.0;

  double dx() const { return length / static_cast<double>(ncells); }
  double center(std::size_t j) const {
    return (static_cast<double>(j) + 0.5) * dx();
  }
  std::size_t left(std::size_t j) const { return j == 0 ? ncells - 1 : j - 1; }
  std::size_t right(std::size_t j) const { return j + 1 == ncells ? 0 : j + 1; }

  void validate() const;  // ncells >= 4, length > 0

  bool operator==(const Grid1D&) const = default;
};

/// mean + amplitude * sin(2 pi wavenumber x / L + frequency t + phase)
struct Waveform {
  double mean = 0.0;
  double amplitude = 0.0;
  double wavenumber = 1.0;
  double frequency = 0.0;
  double phase = 0.0;

  double value(double x, double t, double length) const;
  double dx(double x, double t, double length) const;
  double dxx(double x, double t, double length) const;
  double dt(double x, double t, double length) const;
  bool is_zero() const { return mean == 0.0 && amplitude == 0.0; }

  bool operator==(const Waveform&) const = default;
};

/// kappa(theta) = k0 + k1 * theta
struct Conductivity {
  double k0 = 1e-3;
  double k1 = 0.0;

  double operator()(double theta) const { return k0 + k1 * theta; }
  double derivative() const { return k1; }
  // Largest / smallest value over a temperature interval.
  double max_over(double lo, double hi) const;
  double min_over(double lo, double hi) const;

  bool operator==(const Conductivity&) const = default;
};

/// External forcing and conduction. Body forces are per unit mass and the
/// heat supply r is per unit mass, so the volumetric supply is rho * r.
struct SourceConfig {
  std::vector<Waveform> body_force;  // empty means zero for every species
  Waveform heat_supply;
  Conductivity kappa;
  double kappa_min = 1e-8;

  double body(std::size_t i, double x, double t, double length) const {
    return body_force.empty() ? 0.0 : body_force[i].value(x, t, length);
  }
  double supply(double x, double t, double length) const {
    return heat_supply.value(x, t, length);
  }
  bool has_body_force() const;
  bool has_heat_supply() const { return !heat_supply.is_zero(); }

  // kappa >= kappa_min over the validity temperature range.
  void validate(std::size_t species, const ValidityDomain& validity) const;

  bool operator==(const SourceConfig&) const = default;
};

}  // namespace frictionlab
