#include "frictionlab/state.hpp"

#include <cmath>
#include <sstream>

namespace frictionlab {

StateII::StateII(std::size_t species, std::size_t cells)
    : n(species),
      ncells(cells),
      rho(species * cells, 0.0),
      v(species * cells, 0.0),
      theta(cells, 0.0),
      momentum(species * cells, 0.0),
      energy(cells, 0.0) {}

void StateII::cell_rho(std::size_t j, std::span<double> out) const {
  for (std::size_t i = 0; i < n; ++i) out[i] = rho_at(i, j);
}

void StateII::cell_v(std::size_t j, std::span<double> out) const {
  for (std::size_t i = 0; i < n; ++i) out[i] = v_at(i, j);
}

double StateII::total_density(std::size_t j) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += rho_at(i, j);
  return sum;
}

double StateII::barycentric_velocity(std::size_t j) const {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m += rho_at(i, j) * v_at(i, j);
  return m / total_density(j);
}

void sync_conservative(StateII& state, const ThermoModel& thermo) {
  for (std::size_t j = 0; j < state.ncells; ++j) {
    double internal = 0.0;
    double kinetic = 0.0;
    for (std::size_t i = 0; i < state.n; ++i) {
      const double r = state.rho_at(i, j);
      const double vel = state.v_at(i, j);
      state.momentum[i * state.ncells + j] = r * vel;
      internal += internal_energy_density(thermo, i, r, state.theta[j]);
      kinetic += 0.5 * r * vel * vel;
    }
    state.energy[j] = internal + kinetic;
  }
}

void sync_primitive(StateII& state, const ThermoModel& thermo) {
  for (std::size_t j = 0; j < state.ncells; ++j) {
    double kinetic = 0.0;
    double capacity = 0.0;
    for (std::size_t i = 0; i < state.n; ++i) {
      const std::size_t k = i * state.ncells + j;
      const double r = state.rho[k];
      const double vel = r > thermo.rho_floor ? state.momentum[k] / r : 0.0;
      state.v[k] = vel;
      kinetic += 0.5 * r * vel * vel;
      capacity += r * thermo.c[i];
    }
    state.theta[j] = (state.energy[j] - kinetic) / capacity;
  }
}

StateI::StateI(std::size_t species, std::size_t cells)
    : n(species),
      ncells(cells),
      rho(species * cells, 0.0),
      v(cells, 0.0),
      theta(cells, 0.0),
      u(species * cells, 0.0) {}

void StateI::cell_rho(std::size_t j, std::span<double> out) const {
  for (std::size_t i = 0; i < n; ++i) out[i] = rho_at(i, j);
}

double StateI::total_density(std::size_t j) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += rho_at(i, j);
  return sum;
}

namespace {

DomainViolation violation(std::size_t cell, const std::string& what) {
  return DomainViolation{true, cell, what};
}

template <class State>
DomainViolation check_common(const State& state, const ThermoModel& thermo,
                             double species_lower) {
  const auto& box = thermo.validity;
  for (std::size_t j = 0; j < state.ncells; ++j) {
    double total = 0.0;
    for (std::size_t i = 0; i < state.n; ++i) {
      const double r = state.rho_at(i, j);
      if (!std::isfinite(r) || r < species_lower || r > box.M) {
        std::ostringstream os;
        os << "rho_" << i + 1 << " = " << r << " outside [" << species_lower
           << ", " << box.M << "]";
        return violation(j, os.str());
      }
      total += r;
    }
    if (!box.contains(total)) {
      std::ostringstream os;
      os << "total density " << total << " outside [" << box.gamma << ", "
         << box.M << "]";
      return violation(j, os.str());
    }
    const double th = state.theta[j];
    if (!std::isfinite(th) || !box.contains(th)) {
      std::ostringstream os;
      os << "theta = " << th << " outside [" << box.gamma << ", " << box.M << "]";
      return violation(j, os.str());
    }
  }
  return {};
}

}  // namespace

DomainViolation check_domain(const StateII& state, const ThermoModel& thermo) {
  auto out = check_common(state, thermo, 0.0);
  if (out.violated) return out;
  for (std::size_t k = 0; k < state.v.size(); ++k) {
    if (!std::isfinite(state.v[k]))
      return violation(k % state.ncells, "non-finite species velocity");
  }
  return out;
}

DomainViolation check_domain(const StateI& state, const ThermoModel& thermo) {
  auto out = check_common(state, thermo, thermo.validity.gamma);
  if (out.violated) return out;
  for (std::size_t j = 0; j < state.ncells; ++j) {
    if (!std::isfinite(state.v[j]))
      return violation(j, "non-finite barycentric velocity");
  }
  return out;
}

double species_mass(const StateII& state, const Grid1D& grid, std::size_t i) {
  double sum = 0.0;
  for (std::size_t j = 0; j < state.ncells; ++j) sum += state.rho_at(i, j);
  return sum * grid.dx();
}

double total_momentum(const StateII& state, const Grid1D& grid) {
  double sum = 0.0;
  for (double m : state.momentum) sum += m;
  return sum * grid.dx();
}

double total_energy(const StateII& state, const Grid1D& grid) {
  double sum = 0.0;
  for (double e : state.energy) sum += e;
  return sum * grid.dx();
}

double species_mass(const StateI& state, const Grid1D& grid, std::size_t i) {
  double sum = 0.0;
  for (std::size_t j = 0; j < state.ncells; ++j) sum += state.rho_at(i, j);
  return sum * grid.dx();
}

double total_momentum(const StateI& state, const Grid1D& grid) {
  double sum = 0.0;
  for (std::size_t j = 0; j < state.ncells; ++j)
    sum += state.total_density(j) * state.v[j];
  return sum * grid.dx();
}

double total_energy(const StateI& state, const Grid1D& grid,
                    const ThermoModel& thermo) {
  double sum = 0.0;
  for (std::size_t j = 0; j < state.ncells; ++j) {
    double internal = 0.0;
    for (std::size_t i = 0; i < state.n; ++i)
      internal += internal_energy_density(thermo, i, state.rho_at(i, j), state.theta[j]);
    sum += internal + 0.5 * state.total_density(j) * state.v[j] * state.v[j];
  }
  return sum * grid.dx();
}

}  // namespace frictionlab
