#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace frictionlab {

/// Binary friction coefficients b_ij (symmetric, positive off the diagonal;
/// the diagonal is ignored) together with the friction time scale epsilon.
class FrictionMatrix {
 public:
  FrictionMatrix() = default;
  FrictionMatrix(std::size_t n, double epsilon);
  // Builds from the strict upper triangle in row-major order:
  // b_12, b_13, ..., b_1n, b_23, ...
  static FrictionMatrix from_upper(std::size_t n, std::span<const double> upper,
                                   double epsilon);

  std::size_t species() const { return n_; }
  double epsilon() const { return epsilon_; }
  void set_epsilon(double epsilon) { epsilon_ = epsilon; }

  double operator()(std::size_t i, std::size_t j) const {
    return i == j ? 0.0 : b_[i * n_ + j];
  }
  void set(std::size_t i, std::size_t j, double value);

  std::vector<double> upper() const;
  double min_offdiagonal() const;

  // Throws DomainError on asymmetry, nonpositive entries or epsilon <= 0.
  void validate() const;

  bool operator==(const FrictionMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  double epsilon_ = 1.0;
  std::vector<double> b_;
};

namespace maxwell_stefan {

inline constexpr double tol_consistency = 1e-10;
inline constexpr double tol_constraint = 1e-12;
inline constexpr double tol_solve = 1e-11;

/// Driving force densities
///   d_i = (rho_i/rho)(rho b - grad p) - rho_i b_i + grad p_i,
/// with rho b = sum rho_j b_j and grad p = sum grad p_j, so sum d_i = 0.
/// `body_force` is force per unit mass.
void assemble_forces(std::span<const double> rho,
                     std::span<const double> body_force,
                     std::span<const double> grad_p, std::span<double> forces);
std::vector<double> assemble_forces(std::span<const double> rho,
                                    std::span<const double> body_force,
                                    std::span<const double> grad_p);

/// Unique u with
///   -sum_{j != i} b_ij theta rho_i rho_j (u_i - u_j) = epsilon d_i,
///   sum_i rho_i u_i = 0,
/// from the bordered (n+1)x(n+1) system.
/// Throws ConsistencyError when sum d_i is not zero to tol_consistency and
/// DomainError for nonpositive densities/temperature or vanishing friction.
void solve(std::span<const double> rho, double theta,
           const FrictionMatrix& friction, std::span<const double> forces,
           std::span<double> u);
std::vector<double> solve(std::span<const double> rho, double theta,
                          const FrictionMatrix& friction,
                          std::span<const double> forces);

struct Residual {
  std::vector<double> force;  // |A u - epsilon d|_i per species
  double constraint = 0.0;    // |sum rho_i u_i|
};

Residual residual(std::span<const double> rho, double theta,
                  const FrictionMatrix& friction,
                  std::span<const double> forces, std::span<const double> u);

/// (A u)_i = -sum_{j != i} b_ij theta rho_i rho_j (u_i - u_j): the friction
/// force density on species i for relative velocities u.
void friction_force(std::span<const double> rho, double theta,
                    const FrictionMatrix& friction, std::span<const double> u,
                    std::span<double> out);

}  // namespace maxwell_stefan
}  // namespace frictionlab
