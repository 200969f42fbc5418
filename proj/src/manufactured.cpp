#include "frictionlab/manufactured.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frictionlab/errors.hpp"

namespace frictionlab {

namespace {

struct Point {
  std::size_t n = 0;
  std::vector<double> rho, rho_x, rho_t, v, v_x, v_t;
  double th = 0.0, th_x = 0.0, th_t = 0.0, th_xx = 0.0;
};

Point evaluate(const ManufacturedFields& f, double x, double t, double L) {
  Point p;
  p.n = f.rho.size();
  p.rho.resize(p.n);
  p.rho_x.resize(p.n);
  p.rho_t.resize(p.n);
  p.v.resize(p.n);
  p.v_x.resize(p.n);
  p.v_t.resize(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    p.rho[i] = f.rho[i].value(x, t, L);
    p.rho_x[i] = f.rho[i].dx(x, t, L);
    p.rho_t[i] = f.rho[i].dt(x, t, L);
    p.v[i] = f.v[i].value(x, t, L);
    p.v_x[i] = f.v[i].dx(x, t, L);
    p.v_t[i] = f.v[i].dt(x, t, L);
  }
  p.th = f.theta.value(x, t, L);
  p.th_x = f.theta.dx(x, t, L);
  p.th_t = f.theta.dt(x, t, L);
  p.th_xx = f.theta.dxx(x, t, L);
  return p;
}

class Evaluator {
 public:
  Evaluator(const ManufacturedPair& pair, const IdentityOptions& options)
      : pair_(pair), thermo_(pair.thermo), options_(options) {}

  double h(double x, double t) const {
    const Point w = evaluate(pair_.omega, x, t, pair_.length);
    const Point b = evaluate(pair_.omega_bar, x, t, pair_.length);
    double sum = 0.0;
    for (std::size_t i = 0; i < w.n; ++i) {
      const double dv = w.v[i] - b.v[i];
      sum += 0.5 * w.rho[i] * dv * dv +
             relative_free_energy(thermo_, i, {w.rho[i], w.th}, {b.rho[i], b.th}) +
             (entropy_density(thermo_, i, w.rho[i], w.th) -
              entropy_density(thermo_, i, b.rho[i], b.th)) * (w.th - b.th);
    }
    return sum;
  }

  double q(double x, double t) const {
    const Point w = evaluate(pair_.omega, x, t, pair_.length);
    const Point b = evaluate(pair_.omega_bar, x, t, pair_.length);
    double sum = 0.0;
    for (std::size_t i = 0; i < w.n; ++i) {
      const double dv = w.v[i] - b.v[i];
      const double rel_psi =
          relative_free_energy(thermo_, i, {w.rho[i], w.th}, {b.rho[i], b.th});
      const double entropy_gap = entropy_density(thermo_, i, w.rho[i], w.th) -
                                 entropy_density(thermo_, i, b.rho[i], b.th);
      const double pressure_gap = partial_pressure(thermo_, i, w.rho[i], w.th) -
                                  partial_pressure(thermo_, i, b.rho[i], b.th);
      sum += 0.5 * w.rho[i] * w.v[i] * dv * dv + rel_psi * w.v[i] +
             entropy_gap * (w.th - b.th) * w.v[i] + pressure_gap * dv;
    }
    return sum;
  }

  // Flux of the conduction divergence term.
  double conduction_flux(double x, double t) const {
    const Point w = evaluate(pair_.omega, x, t, pair_.length);
    const Point b = evaluate(pair_.omega_bar, x, t, pair_.length);
    const auto& kappa = pair_.sources.kappa;
    return (w.th - b.th) * (kappa(w.th) * w.th_x / w.th - kappa(b.th) * b.th_x / b.th);
  }

  // Every right-hand side term except the conduction divergence.
  double rhs_local(double x, double t) const {
    const Point w = evaluate(pair_.omega, x, t, pair_.length);
    const Point b = evaluate(pair_.omega_bar, x, t, pair_.length);
    const std::size_t n = w.n;
    const double eps = pair_.friction.epsilon();
    const auto& bij = pair_.friction;
    const auto& kappa = pair_.sources.kappa;
    const double L = pair_.length;
    const double th = w.th;
    const double thb = b.th;
    const double dth = th - thb;

    double sum = 0.0;
    // Friction dissipation and cross terms.
    double dissipation = 0.0, t10 = 0.0, t11 = 0.0, t12 = 0.0, t13 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double rel = (w.v[i] - w.v[j]) - (b.v[i] - b.v[j]);
        const double vb_ij = b.v[i] - b.v[j];
        dissipation += thb * bij(i, j) * w.rho[i] * w.rho[j] * rel * rel;
        t10 += thb * bij(i, j) * w.rho[i] * (w.v[i] - b.v[i]) * (w.rho[j] - b.rho[j]) * vb_ij;
        t11 += dth * bij(i, j) * w.rho[i] * w.rho[j] * (w.v[i] - b.v[i]) * vb_ij;
        t12 += dth * bij(i, j) * (w.rho[i] - b.rho[i]) * b.rho[j] * vb_ij * b.v[i];
        t13 += dth * bij(i, j) * w.rho[i] * (w.rho[j] - b.rho[j]) * vb_ij * b.v[i];
      }
    }
    sum += -dissipation / (2.0 * eps) - t10 / eps;
    if (options_.theta_friction_cross_terms) sum += (t11 + t12 + t13) / eps;

    const double glog = w.th_x / th;
    const double glog_b = b.th_x / thb;
    sum += -thb * kappa(th) * (glog - glog_b) * (glog - glog_b);
    sum += (glog - glog_b) * glog_b * (th * kappa(thb) - thb * kappa(th));

    double rho = 0.0, rho_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const PartialState ws{w.rho[i], th};
      const PartialState bs{b.rho[i], thb};
      const double dv = w.v[i] - b.v[i];
      sum -= relative_quantity(RelativeKind::pressure, thermo_, i, ws, bs) * b.v_x[i];
      sum -= w.rho[i] * dv * dv * b.v_x[i];
      // b_i and b_bar_i are the same prescribed field, so their difference vanishes.
      sum -= relative_quantity(RelativeKind::entropy_density, thermo_, i, ws, bs) *
             (b.th_t + b.v[i] * b.th_x);
      sum -= w.rho[i] * dv * b.th_x *
             (specific_entropy(thermo_, i, w.rho[i], th) -
              specific_entropy(thermo_, i, b.rho[i], thb));
      rho += w.rho[i];
      rho_b += b.rho[i];
    }
    if (pair_.sources.has_heat_supply()) {
      const double r = pair_.sources.supply(x, t, L);
      sum += (rho * r / th - rho_b * r / thb) * dth;
    }

    if (options_.forcing_corrections) sum += forcing(w, b, x, t);
    return sum;
  }

 private:
  // Residual bookkeeping. With F_i, G_i, S the mass, momentum and energy
  // residuals of w, F_bar_i, G_bar_i, S_bar those of w_bar and
  //   Z = S_bar - sum v_bar_i G_bar_i - sum (mu_bar_i - v_bar_i^2/2) F_bar_i:
  //   (1 - theta_bar/theta) S + sum (theta_bar v_i/theta - v_bar_i) G_i
  //   + sum [theta_bar (mu_i - v_i^2/2)/theta - (mu_bar_i - v_bar_i^2/2)] F_i
  //   - sum (rho_i/rho_bar_i)(v_i - v_bar_i)(G_bar_i - v_bar_i F_bar_i)
  //   - sum (R_i theta_bar/rho_bar_i)(rho_i - rho_bar_i) F_bar_i
  //   - (theta - theta_bar) [Z/theta_bar - sum (rho_bar_i eta_bar_i)_rho F_bar_i].
  // The last line is the entropy balance residual of w_bar.
  double forcing(const Point& w, const Point& b, double x, double t) const {
    const std::size_t n = w.n;
    const double th = w.th;
    const double thb = b.th;
    const double L = pair_.length;
    double sum = (1.0 - thb / th) * energy_residual(w, x, t);
    double Z = energy_residual(b, x, t);
    double entropy_fix = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double Ri = thermo_.R[i];
      const double ci = thermo_.c[i];
      const double bi = pair_.sources.body(i, x, t, L);

      const double F = w.rho_t[i] + w.rho_x[i] * w.v[i] + w.rho[i] * w.v_x[i];
      const double G = momentum_residual(w, i, bi);
      const double Fb = b.rho_t[i] + b.rho_x[i] * b.v[i] + b.rho[i] * b.v_x[i];
      const double Gb = momentum_residual(b, i, bi);

      const double mu = chemical_potential(thermo_, i, w.rho[i], th);
      const double mu_b = chemical_potential(thermo_, i, b.rho[i], thb);
      sum += (thb * w.v[i] / th - b.v[i]) * G;
      sum += (thb * (mu - 0.5 * w.v[i] * w.v[i]) / th - (mu_b - 0.5 * b.v[i] * b.v[i])) * F;
      sum -= (w.rho[i] / b.rho[i]) * (w.v[i] - b.v[i]) * (Gb - b.v[i] * Fb);
      sum -= (Ri * thb / b.rho[i]) * (w.rho[i] - b.rho[i]) * Fb;

      Z -= b.v[i] * Gb + (mu_b - 0.5 * b.v[i] * b.v[i]) * Fb;
      const double entropy_rho = -Ri * (std::log(b.rho[i]) + 1.0) + ci * (std::log(thb) + 1.0);
      entropy_fix += entropy_rho * Fb;
    }
    sum -= (th - thb) * (Z / thb - entropy_fix);
    return sum;
  }

  // E_t + (sum (rho_j e_j + p_j + rho_j v_j^2/2) v_j)_x - (kappa theta_x)_x
  //   - sum rho_j b_j v_j - rho r.
  double energy_residual(const Point& p, double x, double t) const {
    const auto& kappa = pair_.sources.kappa;
    const double L = pair_.length;
    const double th = p.th;
    double S = 0.0;
    double rho = 0.0;
    for (std::size_t i = 0; i < p.n; ++i) {
      const double Ri = thermo_.R[i];
      const double ci = thermo_.c[i];
      const double bi = pair_.sources.body(i, x, t, L);
      const double e_t = p.rho_t[i] * (ci * th + 0.5 * p.v[i] * p.v[i]) +
                         p.rho[i] * (ci * p.th_t + p.v[i] * p.v_t[i]);
      const double enthalpy = (ci + Ri) * th + 0.5 * p.v[i] * p.v[i];
      const double flux_x = p.rho_x[i] * enthalpy * p.v[i] +
                            p.rho[i] * ((ci + Ri) * p.th_x + p.v[i] * p.v_x[i]) * p.v[i] +
                            p.rho[i] * enthalpy * p.v_x[i];
      S += e_t + flux_x - p.rho[i] * bi * p.v[i];
      rho += p.rho[i];
    }
    S -= kappa.derivative() * p.th_x * p.th_x + kappa(th) * p.th_xx;
    if (pair_.sources.has_heat_supply()) S -= rho * pair_.sources.supply(x, t, L);
    return S;
  }

  // (rho_i v_i)_t + (rho_i v_i^2)_x - rho_i b_i + (p_i)_x + friction_i.
  double momentum_residual(const Point& p, std::size_t i, double bi) const {
    const double Ri = thermo_.R[i];
    const double m_t = p.rho_t[i] * p.v[i] + p.rho[i] * p.v_t[i];
    const double flux_x = p.rho_x[i] * p.v[i] * p.v[i] + 2.0 * p.rho[i] * p.v[i] * p.v_x[i];
    const double p_x = Ri * (p.rho_x[i] * p.th + p.rho[i] * p.th_x);
    double friction = 0.0;
    for (std::size_t j = 0; j < p.n; ++j) {
      if (j == i) continue;
      friction += pair_.friction(i, j) * p.rho[i] * p.rho[j] * (p.v[i] - p.v[j]);
    }
    friction *= p.th / pair_.friction.epsilon();
    return m_t + flux_x - p.rho[i] * bi + p_x + friction;
  }

  const ManufacturedPair& pair_;
  const ThermoModel& thermo_;
  IdentityOptions options_;
};

void check_fields(const ManufacturedFields& f, std::size_t n, const char* which) {
  if (f.rho.size() != n || f.v.size() != n)
    throw PreconditionError(std::string("manufactured ") + which +
                            ": expected one density and one velocity per species");
}

}  // namespace

void ManufacturedPair::validate(std::size_t samples) const {
  thermo.validate();
  friction.validate();
  const std::size_t n = thermo.species();
  if (friction.species() != n)
    throw PreconditionError("manufactured pair: friction matrix size differs from species count");
  check_fields(omega, n, "omega");
  check_fields(omega_bar, n, "omega_bar");
  sources.validate(n, thermo.validity);
  const auto& dom = thermo.validity;
  for (const ManufacturedFields* f : {&omega, &omega_bar}) {
    for (std::size_t s = 0; s < samples; ++s) {
      const double x = length * static_cast<double>(s) / static_cast<double>(samples);
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = f->rho[i].value(x, time, length);
        if (r <= 0.0 || r > dom.M)
          throw DomainError("manufactured pair '" + name + "': species density leaves the validity domain");
        total += r;
      }
      if (!dom.contains(total) || !dom.contains(f->theta.value(x, time, length)))
        throw DomainError("manufactured pair '" + name + "': state leaves the validity domain");
    }
  }
}

IdentityResult check_identity(const ManufacturedPair& pair, std::size_t ncells,
                              double dt, const IdentityOptions& options) {
  if (ncells < 4) throw PreconditionError("check_identity: need at least 4 cells");
  if (!(dt > 0.0)) throw PreconditionError("check_identity: dt must be positive");
  pair.validate();
  const Evaluator ev(pair, options);
  const double L = pair.length;
  const double dx = L / static_cast<double>(ncells);
  const double t = pair.time;
  IdentityResult out;
  out.ncells = ncells;
  out.dt = dt;
  double integrated = 0.0;
  for (std::size_t j = 0; j < ncells; ++j) {
    const double x = (static_cast<double>(j) + 0.5) * dx;
    const double h_t = (ev.h(x, t + dt) - ev.h(x, t - dt)) / (2.0 * dt);
    const double q_x = (ev.q(x + dx, t) - ev.q(x - dx, t)) / (2.0 * dx);
    const double div =
        (ev.conduction_flux(x + dx, t) - ev.conduction_flux(x - dx, t)) / (2.0 * dx);
    const double defect = h_t + q_x - ev.rhs_local(x, t) - div;
    out.defect_l1 += std::abs(defect) * dx;
    integrated += defect * dx;
    out.scale += std::abs(h_t) * dx;
  }
  out.defect_integrated = std::abs(integrated);
  return out;
}

IdentityConvergence identity_convergence(const ManufacturedPair& pair,
                                         std::size_t ncells, double dt,
                                         std::size_t levels,
                                         const IdentityOptions& options) {
  if (levels < 2) throw PreconditionError("identity_convergence: need at least 2 levels");
  IdentityConvergence out;
  for (std::size_t k = 0; k < levels; ++k) {
    out.levels.push_back(check_identity(pair, ncells, dt, options));
    ncells *= 2;
    dt *= 0.5;
  }
  out.min_order = INFINITY;
  for (std::size_t k = 0; k + 1 < levels; ++k) {
    const double a = out.levels[k].defect_l1;
    const double b = out.levels[k + 1].defect_l1;
    const double order = std::log2(a / b);
    out.orders.push_back(order);
    out.min_order = std::min(out.min_order, order);
  }
  return out;
}

namespace {

Waveform wave(double mean, double amp, double k, double freq, double phase) {
  return Waveform{mean, amp, k, freq, phase};
}

}  // namespace

std::vector<ManufacturedPair> builtin_manufactured_pairs() {
  std::vector<ManufacturedPair> pairs;
  {
    ManufacturedPair p;
    p.name = "plain_n2";
    p.thermo.R = {1.0, 0.5};
    p.thermo.c = {1.5, 2.5};
    const double upper[] = {1.0};
    p.friction = FrictionMatrix::from_upper(2, upper, 0.1);
    p.sources.kappa = {0.05, 0.0};
    p.omega.rho = {wave(1.0, 0.2, 1, 0.3, 0.1), wave(0.8, 0.1, 2, -0.5, 0.0)};
    p.omega.v = {wave(0.3, 0.2, 1, 0.7, 1.0), wave(-0.1, 0.1, 1, -0.2, 2.0)};
    p.omega.theta = wave(1.0, 0.15, 1, 0.4, 0.5);
    p.omega_bar.rho = {wave(1.1, 0.15, 1, -0.2, 0.7), wave(0.7, 0.1, 1, 0.4, 1.3)};
    p.omega_bar.v = {wave(0.2, 0.15, 2, 0.3, 0.2), wave(0.0, 0.1, 1, 0.6, -0.4)};
    p.omega_bar.theta = wave(1.1, 0.1, 2, -0.3, 0.9);
    pairs.push_back(p);
  }
  {
    ManufacturedPair p;
    p.name = "body_force_n3";
    p.thermo.R = {1.0, 0.7, 0.4};
    p.thermo.c = {1.5, 2.0, 3.0};
    const double upper[] = {1.0, 0.6, 1.4};
    p.friction = FrictionMatrix::from_upper(3, upper, 0.2);
    p.sources.kappa = {0.02, 0.0};
    p.sources.body_force = {wave(0.3, 0.2, 1, 0.5, 0.0), wave(-0.2, 0.1, 2, 0.0, 1.0),
                            wave(0.0, 0.4, 1, -0.3, 2.0)};
    p.omega.rho = {wave(0.9, 0.2, 1, 0.3, 0.1), wave(0.6, 0.1, 2, -0.5, 0.0),
                   wave(0.5, 0.15, 1, 0.2, 2.2)};
    p.omega.v = {wave(0.3, 0.2, 1, 0.7, 1.0), wave(-0.1, 0.1, 1, -0.2, 2.0),
                 wave(0.05, 0.15, 2, 0.1, 0.3)};
    p.omega.theta = wave(1.2, 0.2, 1, 0.4, 0.5);
    p.omega_bar.rho = {wave(1.0, 0.15, 1, -0.2, 0.7), wave(0.55, 0.1, 1, 0.4, 1.3),
                       wave(0.45, 0.1, 2, 0.3, 0.0)};
    p.omega_bar.v = {wave(0.2, 0.15, 2, 0.3, 0.2), wave(0.0, 0.1, 1, 0.6, -0.4),
                     wave(-0.1, 0.1, 1, 0.0, 1.1)};
    p.omega_bar.theta = wave(1.1, 0.1, 2, -0.3, 0.9);
    pairs.push_back(p);
  }
  {
    ManufacturedPair p;
    p.name = "heat_supply_n2";
    p.thermo.R = {0.8, 1.2};
    p.thermo.c = {2.0, 1.8};
    const double upper[] = {0.7};
    p.friction = FrictionMatrix::from_upper(2, upper, 0.05);
    p.sources.kappa = {0.01, 0.03};
    p.sources.heat_supply = wave(0.5, 0.4, 1, 0.6, 0.3);
    p.omega.rho = {wave(1.2, 0.3, 1, 0.2, 0.4), wave(0.9, 0.2, 1, -0.4, 1.0)};
    p.omega.v = {wave(0.1, 0.25, 1, 0.5, 0.0), wave(0.2, 0.1, 2, -0.3, 0.8)};
    p.omega.theta = wave(1.5, 0.3, 1, 0.6, 0.2);
    p.omega_bar.rho = {wave(1.0, 0.2, 2, 0.1, 0.3), wave(1.0, 0.25, 1, 0.3, 0.0)};
    p.omega_bar.v = {wave(0.15, 0.2, 1, -0.4, 1.5), wave(0.1, 0.15, 1, 0.2, 0.6)};
    p.omega_bar.theta = wave(1.3, 0.2, 1, -0.5, 1.2);
    pairs.push_back(p);
  }
  return pairs;
}

}  // namespace frictionlab
