#include "frictionlab/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "frictionlab/errors.hpp"

namespace frictionlab {

namespace {
constexpr std::size_t kMaxSpecies = 15;
}

StateII lift(const StateI& state, const ThermoModel& thermo) {
  StateII out(state.n, state.ncells);
  out.rho = state.rho;
  out.theta = state.theta;
  for (std::size_t i = 0; i < state.n; ++i)
    for (std::size_t j = 0; j < state.ncells; ++j)
      out.v_at(i, j) = state.v[j] + state.u_at(i, j);
  sync_conservative(out, thermo);
  return out;
}

double thermal_relative_entropy(const ThermoModel& thermo,
                                std::span<const double> rho, double theta,
                                std::span<const double> rho_bar,
                                double theta_bar) {
  double sum = 0.0;
  double entropy_gap = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    sum += relative_free_energy(thermo, i, {rho[i], theta}, {rho_bar[i], theta_bar});
    entropy_gap += entropy_density(thermo, i, rho[i], theta) -
                   entropy_density(thermo, i, rho_bar[i], theta_bar);
  }
  return sum + entropy_gap * (theta - theta_bar);
}

double relative_entropy_density(const ThermoModel& thermo,
                                std::span<const double> rho,
                                std::span<const double> v, double theta,
                                std::span<const double> rho_bar,
                                std::span<const double> v_bar,
                                double theta_bar) {
  double kinetic = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double dv = v[i] - v_bar[i];
    kinetic += 0.5 * rho[i] * dv * dv;
  }
  return kinetic + thermal_relative_entropy(thermo, rho, theta, rho_bar, theta_bar);
}

RelEntropyReport relative_entropy(const StateII& state, const StateII& lifted,
                                  const ThermoModel& thermo, const Grid1D& grid,
                                  const FrictionMatrix& friction,
                                  const SourceConfig& sources,
                                  double coercivity_constant) {
  if (state.n != lifted.n || state.ncells != lifted.ncells ||
      state.ncells != grid.ncells)
    throw PreconditionError("relative_entropy: states live on different grids");
  const std::size_t n = state.n;
  const std::size_t nc = state.ncells;
  const double dx = grid.dx();
  std::array<double, kMaxSpecies> rho{}, v{}, rho_bar{}, v_bar{};
  RelEntropyReport report;
  report.coercivity_margin = std::numeric_limits<double>::infinity();
  double H = 0.0;
  double friction_sum = 0.0;
  double conduction_sum = 0.0;
  for (std::size_t j = 0; j < nc; ++j) {
    state.cell_rho(j, {rho.data(), n});
    state.cell_v(j, {v.data(), n});
    lifted.cell_rho(j, {rho_bar.data(), n});
    lifted.cell_v(j, {v_bar.data(), n});
    const double th = state.theta[j];
    const double th_bar = lifted.theta[j];
    double kinetic = 0.0;
    double distance = (th - th_bar) * (th - th_bar);
    for (std::size_t i = 0; i < n; ++i) {
      const double dv = v[i] - v_bar[i];
      kinetic += 0.5 * rho[i] * dv * dv;
      distance += (rho[i] - rho_bar[i]) * (rho[i] - rho_bar[i]);
    }
    const double thermal =
        thermal_relative_entropy(thermo, {rho.data(), n}, th, {rho_bar.data(), n}, th_bar);
    H += kinetic + thermal;
    report.coercivity_margin =
        std::min(report.coercivity_margin, thermal - coercivity_constant * distance);

    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (i == k) continue;
        const double rel = (v[i] - v[k]) - (v_bar[i] - v_bar[k]);
        f += th_bar * friction(i, k) * rho[i] * rho[k] * rel * rel;
      }
    }
    friction_sum += f;

    const std::size_t r = grid.right(j);
    const double grad_log = (std::log(state.theta[r]) - std::log(th)) / dx;
    const double grad_log_bar = (std::log(lifted.theta[r]) - std::log(th_bar)) / dx;
    const double th_bar_face = 0.5 * (th_bar + lifted.theta[r]);
    const double kappa_face = 0.5 * (sources.kappa(th) + sources.kappa(state.theta[r]));
    conduction_sum += th_bar_face * kappa_face * (grad_log - grad_log_bar) * (grad_log - grad_log_bar);
  }
  report.H = H * dx;
  report.friction_dissipation = friction_sum * dx / (2.0 * friction.epsilon());
  report.conduction_dissipation = conduction_sum * dx;
  return report;
}

CoercivityReport sample_coercivity(const ThermoModel& thermo, std::size_t samples,
                                   std::uint64_t seed) {
  if (samples == 0)
    throw PreconditionError("sample_coercivity: at least one sample is required");
  const std::size_t n = thermo.species();
  const double gamma = thermo.validity.gamma;
  const double M = thermo.validity.M;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw_rho(gamma, M / static_cast<double>(n));
  std::uniform_real_distribution<double> draw_theta(gamma, M);
  std::vector<double> rho(n), rho_bar(n);
  CoercivityReport report;
  report.samples = samples;
  report.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    double distance = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      rho[i] = draw_rho(rng);
      rho_bar[i] = draw_rho(rng);
      distance += (rho[i] - rho_bar[i]) * (rho[i] - rho_bar[i]);
    }
    const double theta = draw_theta(rng);
    const double theta_bar = draw_theta(rng);
    distance += (theta - theta_bar) * (theta - theta_bar);
    if (distance == 0.0) continue;
    const double value = thermal_relative_entropy(thermo, rho, theta, rho_bar, theta_bar);
    report.min_ratio = std::min(report.min_ratio, value / distance);
  }
  report.positive = report.min_ratio > 0.0;
  return report;
}

namespace {

template <class State, class Relative>
EntropyProduction production_common(const State& state, const Grid1D& grid,
                                    const ThermoModel& thermo,
                                    const FrictionMatrix& friction,
                                    const SourceConfig& sources, double t,
                                    Relative relative) {
  const std::size_t n = state.n;
  const std::size_t nc = state.ncells;
  const double dx = grid.dx();
  (void)thermo;
  EntropyProduction out;
  for (std::size_t j = 0; j < nc; ++j) {
    const std::size_t r = grid.right(j);
    const double thL = state.theta[j];
    const double thR = state.theta[r];
    const double grad = (thR - thL) / dx;
    const double kappa_face = 0.5 * (sources.kappa(thL) + sources.kappa(thR));
    out.conduction += kappa_face * grad * grad / (thL * thR);

    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) {
        const double w = relative(i, j) - relative(k, j);
        f += friction(i, k) * state.rho_at(i, j) * state.rho_at(k, j) * w * w;
      }
    }
    // Each unordered pair appears twice in the double sum.
    out.friction += f / friction.epsilon();

    if (sources.has_heat_supply())
      out.supply += state.total_density(j) * sources.supply(grid.center(j), t, grid.length) / thL;
  }
  out.conduction *= dx;
  out.friction *= dx;
  out.supply *= dx;
  return out;
}

}  // namespace

EntropyProduction entropy_production(const StateII& state, const Grid1D& grid,
                                     const ThermoModel& thermo,
                                     const FrictionMatrix& friction,
                                     const SourceConfig& sources, double t) {
  return production_common(state, grid, thermo, friction, sources, t,
                           [&](std::size_t i, std::size_t j) { return state.v_at(i, j); });
}

EntropyProduction entropy_production(const StateI& state, const Grid1D& grid,
                                     const ThermoModel& thermo,
                                     const FrictionMatrix& friction,
                                     const SourceConfig& sources, double t) {
  return production_common(state, grid, thermo, friction, sources, t,
                           [&](std::size_t i, std::size_t j) { return state.u_at(i, j); });
}

double total_entropy(const StateII& state, const Grid1D& grid,
                     const ThermoModel& thermo, std::size_t* clamped_cells) {
  double sum = 0.0;
  std::size_t clamped_count = 0;
  for (std::size_t j = 0; j < state.ncells; ++j) {
    bool clamped = false;
    for (std::size_t i = 0; i < state.n; ++i) {
      const double r = clamp_density(thermo, state.rho_at(i, j), clamped);
      sum += entropy_density(thermo, i, r, state.theta[j]);
    }
    if (clamped) ++clamped_count;
  }
  if (clamped_cells) *clamped_cells = clamped_count;
  return sum * grid.dx();
}

double total_entropy(const StateI& state, const Grid1D& grid,
                     const ThermoModel& thermo) {
  double sum = 0.0;
  for (std::size_t j = 0; j < state.ncells; ++j)
    for (std::size_t i = 0; i < state.n; ++i)
      sum += entropy_density(thermo, i, state.rho_at(i, j), state.theta[j]);
  return sum * grid.dx();
}

}  // namespace frictionlab
