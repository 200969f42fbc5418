#include <doctest.h>

#include <cmath>
#include <random>

#include "frictionlab/errors.hpp"
#include "frictionlab/fit.hpp"

using namespace frictionlab;

TEST_CASE("fit: exact power laws") {
  const std::vector<double> x{1.0, 0.1, 0.01};
  const auto f = fit_rate(x, std::vector<double>{1.0, 0.1, 0.01});
  CHECK(f.slope == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.intercept == doctest::Approx(0.0).scale(1.0));
  CHECK(f.residual < 1e-14);
  CHECK(f.points == 3);

  const auto g = fit_rate(std::vector<double>{1.0, 0.1}, std::vector<double>{1.0, 0.01});
  CHECK(g.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(g.slope_stderr == 0.0);

  const auto h = fit_rate(x, std::vector<double>{3.0, 0.03, 0.0003});
  CHECK(h.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-13));
}

TEST_CASE("fit: noisy slope-one data lands within three standard errors") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<double> x, y;
  for (int k = 0; k < 40; ++k) {
    const double e = std::pow(10.0, -4.0 * k / 39.0);
    x.push_back(e);
    y.push_back(2.0 * e * std::exp(noise(rng)));
  }
  const auto f = fit_rate(x, y);
  CHECK(f.slope_stderr > 0.0);
  CHECK(std::abs(f.slope - 1.0) <= 3.0 * f.slope_stderr);
  CHECK(f.residual == doctest::Approx(0.05).epsilon(0.4));
}

TEST_CASE("fit: preconditions") {
  CHECK_THROWS_AS(fit_rate(std::vector<double>{1.0}, std::vector<double>{1.0}), PreconditionError);
  CHECK_THROWS_AS(fit_rate(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0}),
                  PreconditionError);
  CHECK_THROWS_AS(fit_rate(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 2.0}),
                  PreconditionError);
  CHECK_THROWS_AS(fit_rate(std::vector<double>{1.0, 0.1}, std::vector<double>{1.0, 0.0}),
                  DomainError);
  CHECK_THROWS_AS(fit_rate(std::vector<double>{-1.0, 0.1}, std::vector<double>{1.0, 1.0}),
                  DomainError);
}
