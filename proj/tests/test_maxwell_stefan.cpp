#include <doctest.h>

#include <Eigen/Dense>
#include <numeric>
#include <random>

#include "frictionlab/errors.hpp"
#include "frictionlab/maxwell_stefan.hpp"
#include "ms_oracle.hpp"

using namespace frictionlab;

TEST_CASE("maxwell-stefan: bordered solve agrees with the null-space oracle") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 300; ++k) {
    const auto inst = testing::random_ms_instance(rng, 2 + k % 4);
    const auto u = maxwell_stefan::solve(inst.rho, inst.theta, inst.friction, inst.forces);
    const auto o = testing::ms_oracle(inst.rho, inst.theta, inst.friction, inst.forces);
    double scale = 0.0, diff = 0.0, cons = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      scale = std::max(scale, std::abs(o[i]));
      diff = std::max(diff, std::abs(u[i] - o[i]));
      cons += inst.rho[i] * u[i];
    }
    CHECK(diff <= 1e-10 * std::max(1.0, scale));
    CHECK(std::abs(cons) <= 1e-12);
  }
}

TEST_CASE("maxwell-stefan: linear in epsilon") {
  std::mt19937_64 rng(5);
  const auto inst = testing::random_ms_instance(rng, 3);
  FrictionMatrix f = inst.friction;
  const auto u1 = maxwell_stefan::solve(inst.rho, inst.theta, f, inst.forces);
  f.set_epsilon(inst.friction.epsilon() * 8.0);
  const auto u8 = maxwell_stefan::solve(inst.rho, inst.theta, f, inst.forces);
  for (std::size_t i = 0; i < 3; ++i) CHECK(u8[i] == doctest::Approx(8.0 * u1[i]).epsilon(1e-13));
}

TEST_CASE("maxwell-stefan: residual and friction force") {
  std::mt19937_64 rng(9);
  const auto inst = testing::random_ms_instance(rng, 4);
  const auto u = maxwell_stefan::solve(inst.rho, inst.theta, inst.friction, inst.forces);
  const auto r = maxwell_stefan::residual(inst.rho, inst.theta, inst.friction, inst.forces, u);
  for (double x : r.force) CHECK(x <= maxwell_stefan::tol_solve);
  CHECK(r.constraint <= maxwell_stefan::tol_constraint);

  // Friction forces sum to zero and dissipate: u . A u <= 0.
  std::vector<double> w{0.3, -1.0, 0.2, 0.7}, out(4);
  maxwell_stefan::friction_force(inst.rho, inst.theta, inst.friction, w, out);
  double sum = 0.0, work = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    sum += out[i];
    work += w[i] * out[i];
  }
  CHECK(std::abs(sum) < 1e-13);
  CHECK(work < 0.0);
}

TEST_CASE("maxwell-stefan: driving forces sum to zero") {
  const std::vector<double> rho{0.5, 1.5, 2.0}, b{0.3, -0.2, 1.0}, gp{0.4, -1.1, 0.25};
  const auto d = maxwell_stefan::assemble_forces(rho, b, gp);
  CHECK(std::abs(std::accumulate(d.begin(), d.end(), 0.0)) < 1e-14);
  // Uniform body force and zero gradients: no relative drive.
  const auto d0 = maxwell_stefan::assemble_forces(rho, std::vector<double>{1, 1, 1},
                                                  std::vector<double>{0, 0, 0});
  for (double x : d0) CHECK(std::abs(x) < 1e-14);
}

TEST_CASE("maxwell-stefan: errors") {
  FrictionMatrix f = FrictionMatrix::from_upper(2, std::vector<double>{1.0}, 0.1);
  const std::vector<double> rho{1.0, 1.0};
  CHECK_THROWS_AS(maxwell_stefan::solve(rho, 1.0, f, std::vector<double>{1.0, 0.0}),
                  ConsistencyError);
  CHECK_THROWS_AS(maxwell_stefan::solve(std::vector<double>{0.0, 1.0}, 1.0, f,
                                        std::vector<double>{0.0, 0.0}),
                  DomainError);
  CHECK_THROWS_AS(maxwell_stefan::solve(rho, -1.0, f, std::vector<double>{0.0, 0.0}),
                  DomainError);
  FrictionMatrix bad(2, 0.1);
  bad.set(0, 1, -1.0);
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
