#include "frictionlab/class2_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "frictionlab/errors.hpp"

namespace frictionlab {

namespace {

constexpr int kMaxSpecies = 15;
using SmallMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxSpecies, kMaxSpecies>;
using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxSpecies, 1>;

// Weighted graph Laplacian K with K v = sum_j b_ij rho_i rho_j (v_i - v_j)
// over the active species.
SmallMatrix friction_laplacian(std::span<const double> rho,
                               std::span<const std::size_t> active,
                               const FrictionMatrix& friction) {
  const int m = static_cast<int>(active.size());
  SmallMatrix K = SmallMatrix::Zero(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const std::size_t i = active[a];
      const std::size_t j = active[b];
      const double w = friction(i, j) * rho[i] * rho[j];
      K(a, b) -= w;
      K(b, a) -= w;
      K(a, a) += w;
      K(b, b) += w;
    }
  }
  return K;
}

double kinetic(std::span<const double> rho, std::span<const double> v) {
  double ke = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) ke += 0.5 * rho[i] * v[i] * v[i];
  return ke;
}

}  // namespace

FrictionSubstepResult friction_substep(std::span<const double> rho,
                                       std::span<double> v, double& theta,
                                       const ThermoModel& thermo,
                                       const FrictionMatrix& friction,
                                       double dt, FrictionIntegrator integrator,
                                       std::span<const double> v_start) {
  FrictionSubstepResult result;
  const std::size_t n = rho.size();
  if (!v_start.empty() && v_start.size() != n)
    throw PreconditionError("friction_substep: v_start must have one entry per species");
  std::array<std::size_t, kMaxSpecies> active_storage{};
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (rho[i] > thermo.rho_floor) active_storage[m++] = i;
  const std::span<const std::size_t> active(active_storage.data(), m);
  if (m < 2 || dt == 0.0) return result;
  const bool forced = !v_start.empty();
  bool aligned = true;
  for (std::size_t a = 1; a < m; ++a) {
    if (v[active[a]] != v[active[0]]) aligned = false;
    if (forced && v_start[active[a]] != v_start[active[0]]) aligned = false;
  }
  if (aligned) return result;

  const double capacity = heat_capacity(thermo, rho);
  const double ke0 = kinetic(rho, v);
  double momentum0 = 0.0;
  double mass = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    momentum0 += rho[active[a]] * v[active[a]];
    mass += rho[active[a]];
  }
  const double theta0 = theta;
  const double rate = dt / friction.epsilon();
  const SmallMatrix K = friction_laplacian(rho, active, friction);

  // vs: velocity at the start of the relaxation, vt: target velocity
  // without friction. The frozen force is M (vt - vs) / dt.
  SmallVector sqrt_rho(m), vs(m), vt(m), v1(m);
  for (std::size_t a = 0; a < m; ++a) {
    sqrt_rho(a) = std::sqrt(rho[active[a]]);
    vt(a) = v[active[a]];
    vs(a) = forced ? v_start[active[a]] : vt(a);
  }

  // Exponential route in w = M^{1/2} v with S = M^{-1/2} K M^{-1/2} = Q L Q^T:
  //   w_k(dt) = e^{-z_k} w_k(0) + phi(z_k) (w_target - w_start)_k,
  // z_k = theta L_k dt / eps, phi(z) = (1 - e^{-z}) / z.
  // The decomposition does not depend on theta, so it is computed once.
  Eigen::SelfAdjointEigenSolver<SmallMatrix> eig;
  SmallVector modal_start, modal_push;
  SmallMatrix M = SmallMatrix::Zero(m, m);
  if (integrator == FrictionIntegrator::exponential) {
    const SmallMatrix S =
        sqrt_rho.cwiseInverse().asDiagonal() * K * sqrt_rho.cwiseInverse().asDiagonal();
    eig.compute(S);
    modal_start = eig.eigenvectors().transpose() * sqrt_rho.cwiseProduct(vs);
    modal_push = eig.eigenvectors().transpose() * sqrt_rho.cwiseProduct(vt - vs);
  } else {
    for (std::size_t a = 0; a < m; ++a) M(a, a) = rho[active[a]];
  }

  double theta_mid = theta0;
  double theta_new = theta0;
  bool converged = false;
  for (int it = 1; it <= kFrictionMaxIterations; ++it) {
    result.iterations = it;
    if (integrator == FrictionIntegrator::exponential) {
      SmallVector w(m);
      for (std::size_t a = 0; a < m; ++a) {
        const double z = theta_mid * rate * std::max(eig.eigenvalues()(a), 0.0);
        const double phi = z > 1e-300 ? -std::expm1(-z) / z : 1.0;
        w(a) = std::exp(-z) * modal_start(a) + phi * modal_push(a);
      }
      v1 = (eig.eigenvectors() * w).cwiseQuotient(sqrt_rho);
    } else {
      const double h = 0.5 * theta_mid * rate;
      const SmallMatrix lhs = M + h * K;
      const SmallVector rhs = M * vt - h * (K * vs);
      v1 = lhs.ldlt().solve(rhs);
    }
    // Restore exact momentum; the friction forces are pairwise antisymmetric.
    double momentum1 = 0.0;
    for (std::size_t a = 0; a < m; ++a) momentum1 += rho[active[a]] * v1(a);
    const double shift = (momentum0 - momentum1) / mass;
    for (std::size_t a = 0; a < m; ++a) v1(a) += shift;

    double ke1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double vi = v[i];
      for (std::size_t a = 0; a < m; ++a)
        if (active[a] == i) vi = v1(a);
      ke1 += 0.5 * rho[i] * vi * vi;
    }
    theta_new = theta0 + (ke0 - ke1) / capacity;
    const double next_mid = 0.5 * (theta0 + theta_new);
    const bool done = std::abs(next_mid - theta_mid) <= kFrictionTolerance * theta0;
    theta_mid = next_mid;
    result.kinetic_drop = ke0 - ke1;
    if (done) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw StiffnessError("friction_substep: temperature iteration did not converge in " +
                         std::to_string(kFrictionMaxIterations) + " iterations");
  for (std::size_t a = 0; a < m; ++a) v[active[a]] = v1(a);
  result.internal_gain = capacity * (theta_new - theta0);
  theta = theta_new;
  return result;
}

Class2Solver::Class2Solver(Grid1D grid, ThermoModel thermo,
                           FrictionMatrix friction, SourceConfig sources,
                           FrictionIntegrator integrator)
    : grid_(grid),
      thermo_(std::move(thermo)),
      friction_(std::move(friction)),
      sources_(std::move(sources)),
      integrator_(integrator) {}

double Class2Solver::cfl_dt(const StateII& state, double cfl_number) const {
  const double dx = grid_.dx();
  double advective = std::numeric_limits<double>::infinity();
  double min_capacity = std::numeric_limits<double>::infinity();
  double kappa_max = 0.0;
  std::array<double, kMaxSpecies> rho{};
  for (std::size_t j = 0; j < state.ncells; ++j) {
    const double th = state.theta[j];
    for (std::size_t i = 0; i < state.n; ++i) {
      const double speed = std::abs(state.v_at(i, j)) + sound_speed(thermo_, i, th);
      advective = std::min(advective, dx / speed);
      rho[i] = state.rho_at(i, j);
    }
    min_capacity = std::min(min_capacity, heat_capacity(thermo_, {rho.data(), state.n}));
    kappa_max = std::max(kappa_max, sources_.kappa(th));
  }
  double diffusive = std::numeric_limits<double>::infinity();
  if (kappa_max > 0.0) diffusive = dx * dx * min_capacity / (2.0 * kappa_max);
  return cfl_number * std::min(advective, diffusive);
}

void Class2Solver::friction_step(StateII& state, double dt,
                                 std::span<const double> v_start) const {
  const std::size_t n = state.n;
  const std::size_t nc = state.ncells;
  const bool forced = !v_start.empty();
  if (forced && v_start.size() != state.v.size())
    throw PreconditionError("friction_step: v_start does not match the state");
  std::array<double, kMaxSpecies> rho{};
  std::array<double, kMaxSpecies> vel{};
  std::array<double, kMaxSpecies> start{};
  for (std::size_t j = 0; j < nc; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      rho[i] = state.rho_at(i, j);
      vel[i] = state.v_at(i, j);
      if (forced) start[i] = v_start[i * nc + j];
    }
    double th = state.theta[j];
    friction_substep({rho.data(), n}, {vel.data(), n}, th, thermo_, friction_, dt,
                     integrator_, forced ? std::span<const double>(start.data(), n)
                                         : std::span<const double>());
    double ke = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      state.v_at(i, j) = vel[i];
      state.momentum[i * nc + j] = rho[i] * vel[i];
      ke += 0.5 * rho[i] * vel[i] * vel[i];
    }
    // Total energy is untouched; temperature follows from it.
    state.theta[j] = (state.energy[j] - ke) / heat_capacity(thermo_, {rho.data(), n});
  }
}

void Class2Solver::transport_step(StateII& state, double t, double dt) const {
  const std::size_t n = state.n;
  const std::size_t nc = state.ncells;
  const double dx = grid_.dx();
  const double L = grid_.length;

  // Face j carries the flux between cells j and j+1.
  std::vector<double> mass_flux(n * nc), mom_flux(n * nc), energy_flux(nc);
  for (std::size_t j = 0; j < nc; ++j) {
    const std::size_t r = grid_.right(j);
    const double thL = state.theta[j];
    const double thR = state.theta[r];
    double speed = 0.0;
    double efL = 0.0;
    double efR = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      speed = std::max({speed, std::abs(state.v_at(i, j)) + sound_speed(thermo_, i, thL),
                        std::abs(state.v_at(i, r)) + sound_speed(thermo_, i, thR)});
      const double rL = state.rho_at(i, j), vL = state.v_at(i, j);
      const double rR = state.rho_at(i, r), vR = state.v_at(i, r);
      const double pL = partial_pressure(thermo_, i, rL, thL);
      const double pR = partial_pressure(thermo_, i, rR, thR);
      efL += (internal_energy_density(thermo_, i, rL, thL) + pL + 0.5 * rL * vL * vL) * vL;
      efR += (internal_energy_density(thermo_, i, rR, thR) + pR + 0.5 * rR * vR * vR) * vR;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double rL = state.rho_at(i, j), vL = state.v_at(i, j);
      const double rR = state.rho_at(i, r), vR = state.v_at(i, r);
      const double mL = state.momentum[i * nc + j];
      const double mR = state.momentum[i * nc + r];
      const double pL = partial_pressure(thermo_, i, rL, thL);
      const double pR = partial_pressure(thermo_, i, rR, thR);
      mass_flux[i * nc + j] = 0.5 * (mL + mR) - 0.5 * speed * (rR - rL);
      mom_flux[i * nc + j] =
          0.5 * (mL * vL + pL + mR * vR + pR) - 0.5 * speed * (mR - mL);
    }
    const double kappa_face = 0.5 * (sources_.kappa(thL) + sources_.kappa(thR));
    energy_flux[j] = 0.5 * (efL + efR) - 0.5 * speed * (state.energy[r] - state.energy[j]) -
                     kappa_face * (thR - thL) / dx;
  }

  const double t_mid = t + 0.5 * dt;
  const double ratio = dt / dx;
  const bool body = sources_.has_body_force();
  const bool supply = sources_.has_heat_supply();
  std::vector<double> energy_source(nc, 0.0);
  std::vector<double> mom_source(body ? n * nc : 0, 0.0);
  if (body || supply) {
    for (std::size_t j = 0; j < nc; ++j) {
      const double x = grid_.center(j);
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!body) break;
        const double f = state.rho_at(i, j) * sources_.body(i, x, t_mid, L);
        mom_source[i * nc + j] = f;
        s += f * state.v_at(i, j);
      }
      if (supply) s += state.total_density(j) * sources_.supply(x, t_mid, L);
      energy_source[j] = s;
    }
  }

  for (std::size_t j = 0; j < nc; ++j) {
    const std::size_t l = grid_.left(j);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = i * nc + j;
      state.rho[k] -= ratio * (mass_flux[k] - mass_flux[i * nc + l]);
      state.momentum[k] -= ratio * (mom_flux[k] - mom_flux[i * nc + l]);
      if (body) state.momentum[k] += dt * mom_source[k];
    }
    state.energy[j] -= ratio * (energy_flux[j] - energy_flux[l]);
    state.energy[j] += dt * energy_source[j];
  }
  sync_primitive(state, thermo_);
}

void Class2Solver::step(StateII& state, double t, double dt) const {
  const double admissible = cfl_dt(state, 1.0);
  if (dt > admissible * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "class2 step: dt = " << dt << " exceeds the admissible step " << admissible;
    throw CflError(os.str(), admissible);
  }
  const std::vector<double> v_start = state.v;
  transport_step(state, t, dt);
  friction_step(state, dt, v_start);
  const auto bad = check_domain(state, thermo_);
  if (bad.violated) {
    std::ostringstream os;
    os << "class2 step at t = " << t + dt << ": cell " << bad.cell << ": " << bad.what;
    throw DomainError(os.str());
  }
}

}  // namespace frictionlab
