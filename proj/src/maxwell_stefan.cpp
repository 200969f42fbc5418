#include "frictionlab/maxwell_stefan.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "frictionlab/errors.hpp"

namespace frictionlab {

namespace {

constexpr int kMaxBordered = 16;
using BorderedMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxBordered,
                  kMaxBordered>;
using BorderedVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxBordered, 1>;

}  // namespace

FrictionMatrix::FrictionMatrix(std::size_t n, double epsilon)
    : n_(n), epsilon_(epsilon), b_(n * n, 0.0) {}

FrictionMatrix FrictionMatrix::from_upper(std::size_t n,
                                          std::span<const double> upper,
                                          double epsilon) {
  if (upper.size() != n * (n - 1) / 2)
    throw DomainError("friction.b: expected " + std::to_string(n * (n - 1) / 2) +
                      " upper-triangular entries, got " +
                      std::to_string(upper.size()));
  FrictionMatrix m(n, epsilon);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, upper[k++]);
  return m;
}

void FrictionMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i == j) return;
  b_[i * n_ + j] = value;
  b_[j * n_ + i] = value;
}

std::vector<double> FrictionMatrix::upper() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) out.push_back((*this)(i, j));
  return out;
}

double FrictionMatrix::min_offdiagonal() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) m = std::min(m, (*this)(i, j));
  return m;
}

void FrictionMatrix::validate() const {
  if (!(epsilon_ > 0.0)) throw DomainError("friction: epsilon must be positive");
  if (n_ + 1 > static_cast<std::size_t>(kMaxBordered))
    throw DomainError("friction: at most " + std::to_string(kMaxBordered - 1) +
                      " species are supported");
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (i == j) continue;
      if (b_[i * n_ + j] != b_[j * n_ + i])
        throw DomainError("friction: b must be symmetric");
      if (!(b_[i * n_ + j] > 0.0))
        throw DomainError("friction: b_" + std::to_string(i + 1) +
                          std::to_string(j + 1) + " must be positive");
    }
  }
}

namespace maxwell_stefan {

void assemble_forces(std::span<const double> rho,
                     std::span<const double> body_force,
                     std::span<const double> grad_p, std::span<double> forces) {
  const std::size_t n = rho.size();
  double rho_total = 0.0;
  double rho_b = 0.0;
  double grad_p_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rho_total += rho[i];
    rho_b += rho[i] * body_force[i];
    grad_p_total += grad_p[i];
  }
  const double mixture = rho_b - grad_p_total;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    forces[i] = rho[i] / rho_total * mixture - rho[i] * body_force[i] + grad_p[i];
    sum += forces[i];
  }
  // Sum is zero algebraically; remove the rounding remainder.
  for (std::size_t i = 0; i < n; ++i) forces[i] -= rho[i] / rho_total * sum;
}

std::vector<double> assemble_forces(std::span<const double> rho,
                                    std::span<const double> body_force,
                                    std::span<const double> grad_p) {
  std::vector<double> out(rho.size());
  assemble_forces(rho, body_force, grad_p, out);
  return out;
}

void friction_force(std::span<const double> rho, double theta,
                    const FrictionMatrix& friction, std::span<const double> u,
                    std::span<double> out) {
  const std::size_t n = rho.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      acc -= friction(i, j) * theta * rho[i] * rho[j] * (u[i] - u[j]);
    }
    out[i] = acc;
  }
}

void solve(std::span<const double> rho, double theta,
           const FrictionMatrix& friction, std::span<const double> forces,
           std::span<double> u) {
  const std::size_t n = rho.size();
  if (!(theta > 0.0))
    throw DomainError("maxwell_stefan::solve: theta must be positive");
  double sum = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(rho[i] > 0.0))
      throw DomainError("maxwell_stefan::solve: rho_" + std::to_string(i + 1) +
                        " must be positive");
    sum += forces[i];
    scale += std::abs(forces[i]);
  }
  if (std::abs(sum) > tol_consistency * scale)
    throw ConsistencyError("maxwell_stefan::solve: driving forces sum to " +
                           std::to_string(sum) + ", expected 0");
  if (scale == 0.0) {
    for (std::size_t i = 0; i < n; ++i) u[i] = 0.0;
    return;
  }

  const int m = static_cast<int>(n);
  BorderedMatrix K = BorderedMatrix::Zero(m + 1, m + 1);
  BorderedVector rhs(m + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const double w = friction(i, j) * theta * rho[i] * rho[j];
      if (!(w > 0.0))
        throw DomainError("maxwell_stefan::solve: friction coefficient for pair (" +
                          std::to_string(i + 1) + "," + std::to_string(j + 1) +
                          ") is not positive");
      K(i, j) += w;
      K(i, i) -= w;
    }
    K(i, m) = rho[i];
    K(m, i) = rho[i];
    rhs(i) = friction.epsilon() * forces[i];
  }
  rhs(m) = 0.0;
  const BorderedVector sol = K.fullPivLu().solve(rhs);

  double constraint = 0.0;
  double rho_total = 0.0;
  for (int i = 0; i < m; ++i) {
    if (!std::isfinite(sol(i)))
      throw DomainError("maxwell_stefan::solve: singular bordered system");
    constraint += rho[i] * sol(i);
    rho_total += rho[i];
  }
  // Project the rounding remainder off the constraint.
  const double shift = constraint / rho_total;
  for (int i = 0; i < m; ++i) u[i] = sol(i) - shift;
}

std::vector<double> solve(std::span<const double> rho, double theta,
                          const FrictionMatrix& friction,
                          std::span<const double> forces) {
  std::vector<double> u(rho.size());
  solve(rho, theta, friction, forces, u);
  return u;
}

Residual residual(std::span<const double> rho, double theta,
                  const FrictionMatrix& friction,
                  std::span<const double> forces, std::span<const double> u) {
  const std::size_t n = rho.size();
  Residual out;
  out.force.resize(n);
  friction_force(rho, theta, friction, u, out.force);
  double constraint = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.force[i] = std::abs(out.force[i] - friction.epsilon() * forces[i]);
    constraint += rho[i] * u[i];
  }
  out.constraint = std::abs(constraint);
  return out;
}

}  // namespace maxwell_stefan
}  // namespace frictionlab
