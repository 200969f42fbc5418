#include <doctest.h>

#include <cmath>

#include "frictionlab/class1_solver.hpp"
#include "frictionlab/class2_solver.hpp"
#include "frictionlab/errors.hpp"
#include "frictionlab/initial_conditions.hpp"
#include "helpers.hpp"

using namespace frictionlab;

namespace {

StateII uniform_state(std::size_t ncells, std::vector<double> rho, std::vector<double> v,
                      double theta, const ThermoModel& thermo) {
  StateII s(rho.size(), ncells);
  for (std::size_t i = 0; i < rho.size(); ++i)
    for (std::size_t j = 0; j < ncells; ++j) {
      s.rho_at(i, j) = rho[i];
      s.v_at(i, j) = v[i];
    }
  for (auto& t : s.theta) t = theta;
  sync_conservative(s, thermo);
  return s;
}

StateII smooth_class2(const RunConfig& c) {
  const Class1Solver s1(c.grid, c.thermo, c.friction(c.primary_epsilon()), c.sources);
  return make_class2_state(c, initial_class1(c, s1));
}

}  // namespace

TEST_CASE("class2: uniform aligned state is a fixed point") {
  const RunConfig c = testing::smooth_config(32);
  const Class2Solver solver(c.grid, c.thermo, c.friction(1e-2), c.sources);
  StateII s = uniform_state(32, {1.0, 2.0}, {0.3, 0.3}, 1.1, c.thermo);
  const StateII s0 = s;
  for (int k = 0; k < 20; ++k) solver.step(s, 0.0, 1e-3);
  for (std::size_t q = 0; q < s.rho.size(); ++q) {
    CHECK(s.rho[q] == doctest::Approx(s0.rho[q]).epsilon(1e-14));
    CHECK(s.v[q] == doctest::Approx(s0.v[q]).epsilon(1e-13));
  }
  for (double t : s.theta) CHECK(t == doctest::Approx(1.1).epsilon(1e-14));
}

TEST_CASE("class2: mass, momentum and energy are conserved") {
  for (auto integ : {FrictionIntegrator::exponential, FrictionIntegrator::implicit_midpoint}) {
    const RunConfig c = testing::smooth_config(64, 1e-3);
    const Class2Solver solver(c.grid, c.thermo, c.friction(1e-3), c.sources, integ);
    StateII s = smooth_class2(c);
    const double m0 = species_mass(s, c.grid, 0), m1 = species_mass(s, c.grid, 1);
    const double p0 = total_momentum(s, c.grid), e0 = total_energy(s, c.grid);
    double t = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double dt = solver.cfl_dt(s, 0.5);
      solver.step(s, t, dt);
      t += dt;
    }
    CHECK(testing::rel(species_mass(s, c.grid, 0), m0) <= 1e-12);
    CHECK(testing::rel(species_mass(s, c.grid, 1), m1) <= 1e-12);
    CHECK(std::abs(total_momentum(s, c.grid) - p0) <= 1e-12 * (std::abs(p0) + 1.0));
    CHECK(testing::rel(total_energy(s, c.grid), e0) <= 1e-12);
  }
}

TEST_CASE("class2: homogeneous friction follows the frozen-temperature exponential") {
  const ThermoModel thermo = testing::thermo2();
  const double eps = 1e-2, b = 1.5;
  const FrictionMatrix f = FrictionMatrix::from_upper(2, std::vector<double>{b}, eps);
  const std::vector<double> rho{1.0, 2.0};
  std::vector<double> v{0.2, -0.1};
  double theta = 1.0;
  const double w0 = v[0] - v[1], p0 = rho[0] * v[0] + rho[1] * v[1];
  const double e0 = 0.5 * (rho[0] * v[0] * v[0] + rho[1] * v[1] * v[1]) +
                    heat_capacity(thermo, rho) * theta;
  const double dt = 0.03;
  friction_substep(rho, v, theta, thermo, f, dt, FrictionIntegrator::exponential);
  const double theta_mid = 0.5 * (1.0 + theta);
  const double expected = w0 * std::exp(-theta_mid * b * (rho[0] + rho[1]) * dt / eps);
  CHECK(v[0] - v[1] == doctest::Approx(expected).epsilon(1e-9));
  CHECK(rho[0] * v[0] + rho[1] * v[1] == doctest::Approx(p0).epsilon(1e-14));
  const double e1 = 0.5 * (rho[0] * v[0] * v[0] + rho[1] * v[1] * v[1]) +
                    heat_capacity(thermo, rho) * theta;
  CHECK(e1 == doctest::Approx(e0).epsilon(1e-14));
  CHECK(theta > 1.0);  // dissipated kinetic energy heats the mixture

  // Implicit midpoint: w1 = w0 (1 - z/2) / (1 + z/2).
  std::vector<double> u{0.2, -0.1};
  double th = 1.0;
  friction_substep(rho, u, th, thermo, f, dt, FrictionIntegrator::implicit_midpoint);
  const double z = 0.5 * (1.0 + th) * b * (rho[0] + rho[1]) * dt / eps;
  CHECK(u[0] - u[1] == doctest::Approx(w0 * (1 - z / 2) / (1 + z / 2)).epsilon(1e-9));
}

TEST_CASE("class2: forced relaxation lands on the drift balance for dt >> eps") {
  // Constant push M (vt - vs)/dt against friction: the stationary relative
  // velocity solves K w = M (vt - vs) / (theta dt / eps).
  const ThermoModel thermo = testing::thermo2();
  const double eps = 1e-6;
  const FrictionMatrix f = FrictionMatrix::from_upper(2, std::vector<double>{1.0}, eps);
  const std::vector<double> rho{1.0, 1.0}, vs{0.0, 0.0};
  std::vector<double> v{1e-3, -1e-3};
  double theta = 1.0;
  const double dt = 1e-2;
  friction_substep(rho, v, theta, thermo, f, dt, FrictionIntegrator::exponential, vs);
  // Two species, rho = 1: K = [[1,-1],[-1,1]], force per species +-1e-3/dt.
  // Balance: theta/eps (v0 - v1) = 1e-3/dt  =>  v0 - v1 = 1e-3 eps/(theta dt).
  const double drift = 1e-3 * eps / (theta * dt);
  CHECK(v[0] - v[1] == doctest::Approx(drift).epsilon(1e-3));
  CHECK(v[0] + v[1] == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("class2: CFL and domain errors") {
  const RunConfig c = testing::smooth_config(32);
  const Class2Solver solver(c.grid, c.thermo, c.friction(1e-2), c.sources);
  StateII s = smooth_class2(c);
  const double dt = solver.cfl_dt(s, 1.0);
  CHECK(dt > 0.0);
  CHECK_THROWS_AS(solver.step(s, 0.0, 2.0 * dt), CflError);
  try {
    solver.step(s, 0.0, 2.0 * dt);
  } catch (const CflError& e) {
    CHECK(e.admissible_dt() == doctest::Approx(dt));
  }
  StateII bad = uniform_state(32, {1.0, 1.0}, {0.0, 0.0}, 1.0, c.thermo);
  bad.theta[5] = 100.0;  // outside [gamma, M]
  sync_conservative(bad, c.thermo);
  CHECK_THROWS_AS(solver.step(bad, 0.0, 1e-6), DomainError);
}
