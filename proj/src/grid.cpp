#include "frictionlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "frictionlab/errors.hpp"

namespace frictionlab {

void Grid1D::validate() const {
  if (ncells < 4) throw DomainError("grid: ncells must be at least 4");
  if (!(length > 0.0)) throw DomainError("grid: length must be positive");
}

namespace {

double angular(const Waveform& w, double length) {
  return 2.0 * std::numbers::pi * w.wavenumber / length;
}

double argument(const Waveform& w, double x, double t, double length) {
  return angular(w, length) * x + w.frequency * t + w.phase;
}

}  // namespace

double Waveform::value(double x, double t, double length) const {
  if (amplitude == 0.0) return mean;
  return mean + amplitude * std::sin(argument(*this, x, t, length));
}

double Waveform::dx(double x, double t, double length) const {
  if (amplitude == 0.0) return 0.0;
  return amplitude * angular(*this, length) *
         std::cos(argument(*this, x, t, length));
}

double Waveform::dxx(double x, double t, double length) const {
  if (amplitude == 0.0) return 0.0;
  const double k = angular(*this, length);
  return -amplitude * k * k * std::sin(argument(*this, x, t, length));
}

double Waveform::dt(double x, double t, double length) const {
  if (amplitude == 0.0) return 0.0;
  return amplitude * frequency * std::cos(argument(*this, x, t, length));
}

double Conductivity::max_over(double lo, double hi) const {
  return std::max((*this)(lo), (*this)(hi));
}

double Conductivity::min_over(double lo, double hi) const {
  return std::min((*this)(lo), (*this)(hi));
}

bool SourceConfig::has_body_force() const {
  return std::any_of(body_force.begin(), body_force.end(),
                     [](const Waveform& w) { return !w.is_zero(); });
}

void SourceConfig::validate(std::size_t species,
                            const ValidityDomain& validity) const {
  if (!body_force.empty() && body_force.size() != species)
    throw DomainError("sources: body_force needs one entry per species");
  if (!(kappa_min > 0.0)) throw DomainError("sources: kappa_min must be positive");
  if (kappa.min_over(validity.gamma, validity.M) < kappa_min)
    throw DomainError("sources: kappa falls below kappa_min on the validity domain");
}

}  // namespace frictionlab
