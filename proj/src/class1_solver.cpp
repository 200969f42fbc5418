#include "frictionlab/class1_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "frictionlab/errors.hpp"

namespace frictionlab {

namespace {
constexpr std::size_t kMaxSpecies = 15;
}

Class1Solver::Class1Solver(Grid1D grid, ThermoModel thermo,
                           FrictionMatrix friction, SourceConfig sources)
    : grid_(grid),
      thermo_(std::move(thermo)),
      friction_(std::move(friction)),
      sources_(std::move(sources)) {}

void Class1Solver::update_diffusion(StateI& state, double t) const {
  const std::size_t n = state.n;
  const std::size_t nc = state.ncells;
  const double inv_2dx = 0.5 / grid_.dx();
  std::array<double, kMaxSpecies> rho{}, body{}, grad_p{}, forces{}, u{};
  for (std::size_t j = 0; j < nc; ++j) {
    const std::size_t l = grid_.left(j);
    const std::size_t r = grid_.right(j);
    const double x = grid_.center(j);
    for (std::size_t i = 0; i < n; ++i) {
      rho[i] = state.rho_at(i, j);
      body[i] = sources_.body(i, x, t, grid_.length);
      grad_p[i] = (partial_pressure(thermo_, i, state.rho_at(i, r), state.theta[r]) -
                   partial_pressure(thermo_, i, state.rho_at(i, l), state.theta[l])) *
                  inv_2dx;
    }
    try {
      maxwell_stefan::assemble_forces({rho.data(), n}, {body.data(), n},
                                      {grad_p.data(), n}, {forces.data(), n});
      maxwell_stefan::solve({rho.data(), n}, state.theta[j], friction_,
                            {forces.data(), n}, {u.data(), n});
    } catch (const ConsistencyError& e) {
      throw ConsistencyError("cell " + std::to_string(j) + ": " + e.what());
    } catch (const DomainError& e) {
      throw DomainError("cell " + std::to_string(j) + ": " + e.what());
    }
    for (std::size_t i = 0; i < n; ++i) state.u_at(i, j) = u[i];
  }
}

double Class1Solver::cfl_dt(const StateI& state, double cfl_number) const {
  const double dx = grid_.dx();
  double advective = std::numeric_limits<double>::infinity();
  double min_capacity = std::numeric_limits<double>::infinity();
  double kappa_max = 0.0;
  double diffusivity_max = 0.0;
  const double b_min = state.n > 1 ? friction_.min_offdiagonal() : 1.0;
  std::array<double, kMaxSpecies> rho{};
  for (std::size_t j = 0; j < state.ncells; ++j) {
    const double th = state.theta[j];
    double gas = 0.0;
    for (std::size_t i = 0; i < state.n; ++i) {
      const double speed =
          std::abs(state.v[j] + state.u_at(i, j)) + sound_speed(thermo_, i, th);
      advective = std::min(advective, dx / speed);
      rho[i] = state.rho_at(i, j);
      gas = std::max(gas, thermo_.R[i] * (1.0 + thermo_.R[i] / thermo_.c[i]));
    }
    min_capacity = std::min(min_capacity, heat_capacity(thermo_, {rho.data(), state.n}));
    kappa_max = std::max(kappa_max, sources_.kappa(th));
    // Effective Maxwell-Stefan diffusivity; exact for two isothermal
    // species (eps R / (b rho)), scaled by n-1 as a bound for more.
    if (state.n > 1) {
      const double d = friction_.epsilon() * gas * static_cast<double>(state.n - 1) /
                       (b_min * state.total_density(j));
      diffusivity_max = std::max(diffusivity_max, d);
    }
  }
  double diffusive = std::numeric_limits<double>::infinity();
  if (kappa_max > 0.0) diffusive = dx * dx * min_capacity / (2.0 * kappa_max);
  if (diffusivity_max > 0.0)
    diffusive = std::min(diffusive, dx * dx / (2.0 * diffusivity_max));
  return cfl_number * std::min(advective, diffusive);
}

void Class1Solver::step(StateI& state, double t, double dt) const {
  const double admissible = cfl_dt(state, 1.0);
  if (dt > admissible * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "class1 step: dt = " << dt << " exceeds the admissible step " << admissible;
    throw CflError(os.str(), admissible);
  }
  const std::size_t n = state.n;
  const std::size_t nc = state.ncells;
  const double dx = grid_.dx();
  const double L = grid_.length;

  // Conservative variables: rho_i, rho v, E = rho e + 1/2 rho v^2.
  std::vector<double> mom(nc), energy(nc), pressure(nc), diff_energy(nc);
  for (std::size_t j = 0; j < nc; ++j) {
    const double rho = state.total_density(j);
    double internal = 0.0;
    double p = 0.0;
    double transported = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ri = state.rho_at(i, j);
      const double ei = internal_energy_density(thermo_, i, ri, state.theta[j]);
      const double pi = partial_pressure(thermo_, i, ri, state.theta[j]);
      internal += ei;
      p += pi;
      transported += (ei + pi) * state.u_at(i, j);
    }
    mom[j] = rho * state.v[j];
    energy[j] = internal + 0.5 * rho * state.v[j] * state.v[j];
    pressure[j] = p;
    diff_energy[j] = transported;
  }

  std::vector<double> mass_flux(n * nc), mom_flux(nc), energy_flux(nc);
  for (std::size_t j = 0; j < nc; ++j) {
    const std::size_t r = grid_.right(j);
    const double thL = state.theta[j];
    const double thR = state.theta[r];
    const double vL = state.v[j];
    const double vR = state.v[r];
    double speed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      speed = std::max({speed,
                        std::abs(vL + state.u_at(i, j)) + sound_speed(thermo_, i, thL),
                        std::abs(vR + state.u_at(i, r)) + sound_speed(thermo_, i, thR)});
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double rL = state.rho_at(i, j);
      const double rR = state.rho_at(i, r);
      mass_flux[i * nc + j] = 0.5 * (rL * (vL + state.u_at(i, j)) +
                                     rR * (vR + state.u_at(i, r))) -
                              0.5 * speed * (rR - rL);
    }
    mom_flux[j] = 0.5 * (mom[j] * vL + pressure[j] + mom[r] * vR + pressure[r]) -
                  0.5 * speed * (mom[r] - mom[j]);
    const double kappa_face = 0.5 * (sources_.kappa(thL) + sources_.kappa(thR));
    energy_flux[j] = 0.5 * ((energy[j] + pressure[j]) * vL + (energy[r] + pressure[r]) * vR) +
                     0.5 * (diff_energy[j] + diff_energy[r]) -
                     0.5 * speed * (energy[r] - energy[j]) -
                     kappa_face * (thR - thL) / dx;
  }

  const double t_mid = t + 0.5 * dt;
  const double ratio = dt / dx;
  const bool body = sources_.has_body_force();
  const bool supply = sources_.has_heat_supply();
  for (std::size_t j = 0; j < nc; ++j) {
    const std::size_t l = grid_.left(j);
    const double x = grid_.center(j);
    double mom_source = 0.0;
    double energy_source = 0.0;
    if (body) {
      for (std::size_t i = 0; i < n; ++i) {
        const double f = state.rho_at(i, j) * sources_.body(i, x, t_mid, L);
        mom_source += f;
        energy_source += f * (state.v[j] + state.u_at(i, j));
      }
    }
    if (supply) energy_source += state.total_density(j) * sources_.supply(x, t_mid, L);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = i * nc + j;
      state.rho[k] -= ratio * (mass_flux[k] - mass_flux[i * nc + l]);
    }
    mom[j] += -ratio * (mom_flux[j] - mom_flux[l]) + dt * mom_source;
    energy[j] += -ratio * (energy_flux[j] - energy_flux[l]) + dt * energy_source;
  }

  std::array<double, kMaxSpecies> rho{};
  for (std::size_t j = 0; j < nc; ++j) {
    state.cell_rho(j, {rho.data(), n});
    const double total = state.total_density(j);
    state.v[j] = mom[j] / total;
    const double internal = energy[j] - 0.5 * mom[j] * state.v[j];
    state.theta[j] = internal / heat_capacity(thermo_, {rho.data(), n});
  }
  const auto bad = check_domain(state, thermo_);
  if (bad.violated) {
    std::ostringstream os;
    os << "class1 step at t = " << t + dt << ": cell " << bad.cell << ": " << bad.what;
    throw DomainError(os.str());
  }
  update_diffusion(state, t + dt);
}

Residuals residuals(std::span<const StateI> history,
                    std::span<const double> times, const Grid1D& grid) {
  if (history.size() != 3 || times.size() != 3)
    throw PreconditionError("residuals: exactly three snapshots are required, got " +
                            std::to_string(history.size()));
  if (!(times[0] < times[1] && times[1] < times[2]))
    throw PreconditionError("residuals: snapshot times must be increasing");
  const StateI& mid = history[1];
  const std::size_t n = mid.n;
  const std::size_t nc = mid.ncells;
  for (const auto& s : history) {
    if (s.n != n || s.ncells != nc)
      throw PreconditionError("residuals: snapshots have mismatched shapes");
  }
  // Three-point first derivative at the middle node.
  const double h1 = times[1] - times[0];
  const double h2 = times[2] - times[1];
  const double w0 = -h2 / (h1 * (h1 + h2));
  const double w1 = (h2 - h1) / (h1 * h2);
  const double w2 = h1 / (h2 * (h1 + h2));
  const double inv_2dx = 0.5 / grid.dx();

  Residuals out;
  out.n = n;
  out.ncells = nc;
  out.R.assign(n * nc, 0.0);
  out.Q.assign(nc, 0.0);

  auto flux_u = [&](const StateI& s, std::size_t i, std::size_t j) {
    return s.rho_at(i, j) * s.u_at(i, j);
  };
  for (std::size_t j = 0; j < nc; ++j) {
    const std::size_t l = grid.left(j);
    const std::size_t r = grid.right(j);
    const double v = mid.v[j];
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dt_flux = w0 * flux_u(history[0], i, j) + w1 * flux_u(history[1], i, j) +
                             w2 * flux_u(history[2], i, j);
      const double dx_flux = (flux_u(mid, i, r) - flux_u(mid, i, l)) * inv_2dx;
      const double dx_cross = (flux_u(mid, i, r) * mid.v[r] - flux_u(mid, i, l) * mid.v[l]) * inv_2dx;
      const double dx_quad = (flux_u(mid, i, r) * mid.u_at(i, r) -
                              flux_u(mid, i, l) * mid.u_at(i, l)) * inv_2dx;
      out.R[i * nc + j] = -dx_flux * v + dt_flux + 2.0 * dx_cross + dx_quad;
    }
    auto kinetic = [&](const StateI& s, std::size_t c) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += 0.5 * s.rho_at(i, c) * s.u_at(i, c) * s.u_at(i, c);
      return sum;
    };
    auto cubic = [&](const StateI& s, std::size_t c) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double uu = s.u_at(i, c);
        sum += 0.5 * s.rho_at(i, c) * uu * uu * uu;
      }
      return sum;
    };
    q += w0 * kinetic(history[0], j) + w1 * kinetic(history[1], j) + w2 * kinetic(history[2], j);
    q += (cubic(mid, r) - cubic(mid, l)) * inv_2dx;
    q += 3.0 * (kinetic(mid, r) * mid.v[r] - kinetic(mid, l) * mid.v[l]) * inv_2dx;
    out.Q[j] = q;
  }
  double r2 = 0.0;
  for (double x : out.R) r2 += x * x;
  double q2 = 0.0;
  for (double x : out.Q) q2 += x * x;
  out.R_norm = std::sqrt(r2 * grid.dx());
  out.Q_norm = std::sqrt(q2 * grid.dx());
  return out;
}

}  // namespace frictionlab
