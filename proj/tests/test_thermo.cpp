#include <doctest.h>

#include <cmath>
#include <random>

#include "frictionlab/errors.hpp"
#include "frictionlab/thermo.hpp"
#include "helpers.hpp"

using namespace frictionlab;

TEST_CASE("thermo: closed forms of the ideal-gas closure") {
  const ThermoModel t = testing::thermo2();
  const double rho = 1.7, theta = 0.8;
  const auto e = eval_species(t, 1, rho, theta);
  CHECK(e.p == doctest::Approx(0.5 * rho * theta).epsilon(1e-15));
  CHECK(e.e == doctest::Approx(2.5 * theta).epsilon(1e-15));
  CHECK(e.mu == doctest::Approx(0.5 * theta * (std::log(rho) + 1) - 2.5 * theta * std::log(theta))
                    .epsilon(1e-14));
  CHECK(sound_speed(t, 0, 2.0) == doctest::Approx(std::sqrt(2.0 * (1.0 + 1.0 / 1.5))));
  CHECK(heat_capacity(t, std::vector<double>{2.0, 3.0}) == doctest::Approx(2.0 * 1.5 + 3.0 * 2.5));
}

TEST_CASE("thermo: Gibbs-Duhem and e = psi + theta eta") {
  const ThermoModel t = testing::thermo2();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(t.validity.gamma, t.validity.M);
  for (int s = 0; s < 500; ++s) {
    const double rho = d(rng), theta = d(rng);
    for (std::size_t i = 0; i < 2; ++i) {
      const auto e = eval_species(t, i, rho, theta);
      const double scale = std::max(1.0, std::abs(rho * e.mu));
      CHECK(std::abs(rho * e.psi + e.p - rho * e.mu) / scale <= 1e-12);
      CHECK(std::abs(e.psi + theta * e.eta - e.e) / std::max(1.0, std::abs(e.e)) <= 1e-12);
    }
  }
}

TEST_CASE("thermo: mu and eta match central differences at second order") {
  const ThermoModel t = testing::thermo2();
  const double rho = 2.3, theta = 1.4;
  for (std::size_t i = 0; i < 2; ++i) {
    auto err_mu = [&](double h) {
      const double fd = (free_energy_density(t, i, rho + h, theta) -
                         free_energy_density(t, i, rho - h, theta)) / (2 * h);
      return std::abs(fd - chemical_potential(t, i, rho, theta));
    };
    // rho eta = -d(rho psi)/d theta
    auto err_eta = [&](double h) {
      const double fd = -(free_energy_density(t, i, rho, theta + h) -
                          free_energy_density(t, i, rho, theta - h)) / (2 * h);
      return std::abs(fd - entropy_density(t, i, rho, theta));
    };
    const double o_mu = std::log2(err_mu(1e-2) / err_mu(5e-3));
    const double o_eta = std::log2(err_eta(1e-2) / err_eta(5e-3));
    CHECK(o_mu >= 1.9);
    CHECK(o_eta >= 1.9);
  }
}

TEST_CASE("thermo: stability signs hold over the validity box") {
  const StabilityReport r = check_stability(testing::thermo2(), 2000, 11);
  CHECK(r.passed);
  CHECK(r.min_rho_rho > 0.0);
  CHECK(r.max_theta_theta < 0.0);
  CHECK_THROWS_AS(check_stability(testing::thermo2(), 0, 1), PreconditionError);
}

TEST_CASE("thermo: relative free energy is a second-order remainder") {
  const ThermoModel t = testing::thermo2();
  const PartialState bar{1.2, 0.9};
  CHECK(relative_free_energy(t, 0, bar, bar) == doctest::Approx(0.0).scale(1.0));
  const double a = relative_free_energy(t, 0, {1.2 + 1e-2, 0.9 - 1e-2}, bar);
  const double b = relative_free_energy(t, 0, {1.2 + 5e-3, 0.9 - 5e-3}, bar);
  CHECK(std::log2(a / b) == doctest::Approx(2.0).epsilon(0.02));
  // Pressure remainder vanishes for p linear in rho at fixed theta.
  CHECK(std::abs(relative_quantity(RelativeKind::pressure, t, 0, {1.5, 0.9}, {1.2, 0.9})) < 1e-14);
}

TEST_CASE("thermo: invalid models and arguments") {
  ThermoModel t = testing::thermo2();
  t.R[0] = -1.0;
  CHECK_THROWS_AS(t.validate(), DomainError);
  ThermoModel u = testing::thermo2();
  u.c.pop_back();
  CHECK_THROWS_AS(u.validate(), DomainError);
  CHECK_THROWS_AS(eval_species(testing::thermo2(), 0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(eval_species(testing::thermo2(), 0, 1.0, -1.0), DomainError);
}
