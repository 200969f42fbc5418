#include "frictionlab/initial_conditions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "frictionlab/diagnostics.hpp"
#include "frictionlab/errors.hpp"

namespace frictionlab {

namespace {

double value_or(const std::vector<double>& v, std::size_t i, double fallback) {
  return v.empty() ? fallback : v[i];
}

}  // namespace

StateI make_class1_state(const RunConfig& config) {
  const std::size_t n = config.species();
  const Grid1D& g = config.grid;
  const IcConfig& ic = config.ic;
  const double L = g.length;
  StateI s(n, g.ncells);
  for (std::size_t j = 0; j < g.ncells; ++j) {
    const double x = g.center(j);
    double shape = 0.0;   // multiplies the amplitudes
    double blend = 0.0;   // two_state: 0 outer, 1 inner
    switch (ic.preset) {
      case IcPreset::uniform:
        break;
      case IcPreset::sine:
        break;
      case IcPreset::gaussian_bump: {
        // Periodic distance to the bump center.
        double d = std::abs(x / L - ic.center);
        d = std::min(d, 1.0 - d);
        const double z = d / ic.width;
        shape = std::exp(-0.5 * z * z);
        break;
      }
      case IcPreset::two_state: {
        const double w = ic.width;
        const double xi = x / L;
        blend = 0.5 * (std::tanh((xi - 0.25) / w) - std::tanh((xi - 0.75) / w));
        break;
      }
    }
    const double arg = 2.0 * std::numbers::pi * ic.wavenumber * x / L;
    for (std::size_t i = 0; i < n; ++i) {
      const double base = value_or(ic.rho, i, 1.0);
      const double amp = value_or(ic.rho_amplitude, i, 0.0);
      double r = base;
      if (ic.preset == IcPreset::sine)
        r += amp * std::sin(arg + static_cast<double>(i));
      else if (ic.preset == IcPreset::gaussian_bump)
        r += amp * shape;
      else if (ic.preset == IcPreset::two_state)
        r += blend * (value_or(ic.rho_inner, i, base) - base);
      s.rho_at(i, j) = r;
    }
    double v = ic.v;
    double th = ic.theta;
    if (ic.preset == IcPreset::sine) {
      v += ic.v_amplitude * std::sin(arg + 0.5);
      th += ic.theta_amplitude * std::cos(arg);
    } else if (ic.preset == IcPreset::gaussian_bump) {
      v += ic.v_amplitude * shape;
      th += ic.theta_amplitude * shape;
    } else if (ic.preset == IcPreset::two_state) {
      v += blend * (ic.v_inner - ic.v);
      th += blend * (ic.theta_inner - ic.theta);
    }
    s.v[j] = v;
    s.theta[j] = th;
  }
  const auto bad = check_domain(s, config.thermo);
  if (bad.violated) {
    std::ostringstream os;
    os << "initial condition (" << to_string(ic.preset) << "): cell " << bad.cell << ": "
       << bad.what;
    throw DomainError(os.str());
  }
  return s;
}

StateI initial_class1(const RunConfig& config, const Class1Solver& solver) {
  StateI s = make_class1_state(config);
  solver.update_diffusion(s, 0.0);
  return s;
}

StateII make_class2_state(const RunConfig& config, const StateI& class1) {
  const std::size_t n = class1.n;
  const std::size_t nc = class1.ncells;
  StateII s = lift(class1, config.thermo);
  if (!config.ic.well_prepared)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < nc; ++j) s.v_at(i, j) = class1.v[j];
  const double delta = config.ic.velocity_mismatch;
  if (delta != 0.0) {
    for (std::size_t j = 0; j < nc; ++j) {
      const double r0 = s.rho_at(0, j);
      const double rest = s.total_density(j) - r0;
      s.v_at(0, j) += delta;
      for (std::size_t i = 1; i < n; ++i) s.v_at(i, j) -= delta * r0 / rest;
    }
  }
  sync_conservative(s, config.thermo);
  return s;
}

}  // namespace frictionlab
