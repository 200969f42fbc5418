#include "frictionlab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>
#include <type_traits>

#include "frictionlab/class1_solver.hpp"
#include "frictionlab/class2_solver.hpp"
#include "frictionlab/csv.hpp"
#include "frictionlab/errors.hpp"
#include "frictionlab/initial_conditions.hpp"

namespace frictionlab {

std::string to_string(Model model) { return model == Model::class1 ? "class1" : "class2"; }

double Conservation::max_mass_drift() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < mass0.size(); ++i)
    worst = std::max(worst, std::abs(mass1[i] - mass0[i]) / std::abs(mass0[i]));
  return worst;
}

double Conservation::momentum_drift() const {
  return momentum_scale > 0.0 ? std::abs(momentum1 - momentum0) / momentum_scale : 0.0;
}

double Conservation::energy_drift() const {
  return std::abs(energy1 - energy0) / std::abs(energy0);
}

namespace {

std::string output_directory(const RunConfig& config, const RunOptions& options) {
  return options.directory ? *options.directory : config.outputs.directory;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

// Output clock: multiples of the snapshot interval plus t_end.
class Clock {
 public:
  explicit Clock(const TimeConfig& time) : t_end_(time.t_end), interval_(time.snapshot_interval) {}

  double next_output(double t) const {
    if (interval_ <= 0.0) return t_end_;
    const double k = std::floor(t / interval_ + 1e-9) + 1.0;
    return std::min(t_end_, k * interval_);
  }
  bool done(double t) const { return t >= t_end_ - 1e-12 * t_end_; }
  // Snaps t to a target it has reached within roundoff.
  static double snap(double t, double target) {
    return std::abs(target - t) <= 1e-12 * std::max(1.0, std::abs(target)) ? target : t;
  }

 private:
  double t_end_;
  double interval_;
};

double choose_dt(const RunConfig& config, double cfl_limit, double t, double target) {
  double dt = config.time.dt ? *config.time.dt : cfl_limit;
  return std::min(dt, target - t);
}

class EntropyTracker {
 public:
  template <class State>
  void start(const State& s, const Grid1D& grid, const ThermoModel& thermo) {
    previous_ = entropy_of(s, grid, thermo);
    stats_.initial = previous_;
    stats_.final = previous_;
    stats_.min_conduction = std::numeric_limits<double>::infinity();
    stats_.min_friction = std::numeric_limits<double>::infinity();
  }

  template <class State>
  EntropyProduction record(const State& s, const Grid1D& grid, const ThermoModel& thermo,
                           const FrictionMatrix& friction, const SourceConfig& sources,
                           double t, double dt, double* delta_out) {
    const double S = entropy_of(s, grid, thermo);
    const EntropyProduction p = entropy_production(s, grid, thermo, friction, sources, t);
    const double delta = S - previous_;
    stats_.min_conduction = std::min(stats_.min_conduction, p.conduction);
    stats_.min_friction = std::min(stats_.min_friction, p.friction);
    stats_.violation += std::max(0.0, -delta);
    stats_.consistency += std::abs(delta - dt * p.total());
    stats_.final = S;
    previous_ = S;
    *delta_out = delta;
    return p;
  }

  EntropyStats stats() const {
    EntropyStats s = stats_;
    if (!std::isfinite(s.min_conduction)) s.min_conduction = 0.0;
    if (!std::isfinite(s.min_friction)) s.min_friction = 0.0;
    return s;
  }

 private:
  double entropy_of(const StateII& s, const Grid1D& grid, const ThermoModel& thermo) {
    std::size_t clamped = 0;
    const double S = total_entropy(s, grid, thermo, &clamped);
    stats_.clamped_cells = std::max(stats_.clamped_cells, clamped);
    return S;
  }
  double entropy_of(const StateI& s, const Grid1D& grid, const ThermoModel& thermo) {
    return total_entropy(s, grid, thermo);
  }

  double previous_ = 0.0;
  EntropyStats stats_;
};

template <class State>
void measure(Conservation& c, const State& s, const Grid1D& grid, const ThermoModel& thermo,
             bool initial) {
  std::vector<double> mass(s.n);
  for (std::size_t i = 0; i < s.n; ++i) mass[i] = species_mass(s, grid, i);
  double momentum = 0.0;
  double energy = 0.0;
  if constexpr (std::is_same_v<State, StateII>) {
    momentum = total_momentum(s, grid);
    energy = total_energy(s, grid);
  } else {
    momentum = total_momentum(s, grid);
    energy = total_energy(s, grid, thermo);
  }
  if (initial) {
    c.mass0 = mass;
    c.momentum0 = momentum;
    c.energy0 = energy;
    double abs_sum = 0.0;
    if constexpr (std::is_same_v<State, StateII>) {
      for (double m : s.momentum) abs_sum += std::abs(m);
    } else {
      for (std::size_t j = 0; j < s.ncells; ++j) abs_sum += std::abs(s.total_density(j) * s.v[j]);
    }
    c.momentum_scale = std::max(std::abs(momentum), abs_sum * grid.dx());
  }
  c.mass1 = mass;
  c.momentum1 = momentum;
  c.energy1 = energy;
}

const std::vector<std::string> kEntropyColumns{"step", "t", "dt", "S", "dS",
                                               "conduction", "friction", "supply"};

}  // namespace

SingleRunResult run_steps(const RunConfig& config, Model model, double epsilon,
                          std::size_t max_steps, const RunOptions& options) {
  const FrictionMatrix friction = config.friction(epsilon);
  const Grid1D& grid = config.grid;
  const ThermoModel& thermo = config.thermo;
  const Class1Solver c1(grid, thermo, friction, config.sources);
  const Class2Solver c2(grid, thermo, friction, config.sources, config.integrator);
  StateI s1 = initial_class1(config, c1);
  StateII s2;
  if (model == Model::class2) s2 = make_class2_state(config, s1);

  SingleRunResult result;
  result.model = model;
  result.epsilon = epsilon;
  std::ostringstream snaps, ent;
  const auto columns = model == Model::class2 ? csv::snapshot_columns_class2(config.species())
                                              : csv::snapshot_columns_class1(config.species());
  csv::write_header(snaps, columns);
  csv::write_header(ent, kEntropyColumns);

  EntropyTracker tracker;
  double t = 0.0;
  auto snapshot = [&] {
    if (!config.outputs.snapshots) return;
    if (model == Model::class2)
      csv::write_snapshot(snaps, t, s2, grid);
    else
      csv::write_snapshot(snaps, t, s1, grid);
  };
  if (model == Model::class2) {
    tracker.start(s2, grid, thermo);
    measure(result.conservation, s2, grid, thermo, true);
  } else {
    tracker.start(s1, grid, thermo);
    measure(result.conservation, s1, grid, thermo, true);
  }
  snapshot();

  const Clock clock(config.time);
  const double cfl = config.time.cfl_number;
  while (!clock.done(t) && result.steps < max_steps) {
    const double target = clock.next_output(t);
    while (t < target && result.steps < max_steps) {
      double delta = 0.0;
      EntropyProduction p;
      double dt = 0.0;
      if (model == Model::class2) {
        dt = choose_dt(config, c2.cfl_dt(s2, cfl), t, target);
        c2.step(s2, t, dt);
        t = Clock::snap(t + dt, target);
        p = tracker.record(s2, grid, thermo, friction, config.sources, t, dt, &delta);
      } else {
        dt = choose_dt(config, c1.cfl_dt(s1, cfl), t, target);
        c1.step(s1, t, dt);
        t = Clock::snap(t + dt, target);
        p = tracker.record(s1, grid, thermo, friction, config.sources, t, dt, &delta);
      }
      ++result.steps;
      const double row[] = {static_cast<double>(result.steps), t, dt, tracker.stats().final,
                            delta, p.conduction, p.friction, p.supply};
      csv::write_row(ent, row);
    }
    if (t >= target) snapshot();
  }
  if (model == Model::class2)
    measure(result.conservation, s2, grid, thermo, false);
  else
    measure(result.conservation, s1, grid, thermo, false);
  result.t_final = t;
  result.entropy = tracker.stats();
  result.snapshots_csv = snaps.str();
  result.entropy_csv = ent.str();
  if (options.write_files) {
    const std::filesystem::path dir = output_directory(config, options);
    const std::string name = to_string(model);
    if (config.outputs.snapshots) write_file(dir / (name + "_snapshots.csv"), result.snapshots_csv);
    write_file(dir / (name + "_entropy.csv"), result.entropy_csv);
  }
  return result;
}

SingleRunResult run_single(const RunConfig& config, Model model, double epsilon,
                           const RunOptions& options) {
  return run_steps(config, model, epsilon, std::numeric_limits<std::size_t>::max(), options);
}

PairedRunResult run_paired(const RunConfig& config, double epsilon, const RunOptions& options) {
  const FrictionMatrix friction = config.friction(epsilon);
  const Grid1D& grid = config.grid;
  const ThermoModel& thermo = config.thermo;
  const Class1Solver c1(grid, thermo, friction, config.sources);
  const Class2Solver c2(grid, thermo, friction, config.sources, config.integrator);
  StateI s1 = initial_class1(config, c1);
  StateII s2 = make_class2_state(config, s1);
  const double C = config.diagnostics.coercivity_constant;

  PairedRunResult result;
  result.epsilon = epsilon;
  std::ostringstream rel, snaps1, snaps2;
  csv::write_header(rel, csv::relentropy_columns());
  csv::write_header(snaps1, csv::snapshot_columns_class1(config.species()));
  csv::write_header(snaps2, csv::snapshot_columns_class2(config.species()));

  EntropyTracker track1, track2;
  track1.start(s1, grid, thermo);
  track2.start(s2, grid, thermo);

  // Last three Class-I states for the reformulation residuals.
  std::vector<StateI> history{s1};
  std::vector<double> times{0.0};

  double t = 0.0;
  auto report = [&] {
    RelEntropyReport r =
        relative_entropy(s2, lift(s1, thermo), thermo, grid, friction, config.sources, C);
    r.t = t;
    if (config.diagnostics.residuals && history.size() == 3) {
      const Residuals res = residuals(history, times, grid);
      r.R_norm = res.R_norm;
      r.Q_norm = res.Q_norm;
    }
    result.series.push_back(r);
    csv::write_relentropy(rel, r);
    if (config.outputs.snapshots) {
      csv::write_snapshot(snaps1, t, s1, grid);
      csv::write_snapshot(snaps2, t, s2, grid);
    }
  };
  report();

  const Clock clock(config.time);
  const double cfl = config.time.cfl_number;
  while (!clock.done(t)) {
    const double target = clock.next_output(t);
    while (t < target) {
      const double limit = std::min(c1.cfl_dt(s1, cfl), c2.cfl_dt(s2, cfl));
      const double dt = choose_dt(config, limit, t, target);
      c2.step(s2, t, dt);
      c1.step(s1, t, dt);
      t = Clock::snap(t + dt, target);
      ++result.steps;
      double delta = 0.0;
      track1.record(s1, grid, thermo, friction, config.sources, t, dt, &delta);
      track2.record(s2, grid, thermo, friction, config.sources, t, dt, &delta);
      history.push_back(s1);
      times.push_back(t);
      if (history.size() > 3) {
        history.erase(history.begin());
        times.erase(times.begin());
      }
    }
    report();
  }
  result.entropy_class1 = track1.stats();
  result.entropy_class2 = track2.stats();
  result.relentropy_csv = rel.str();
  if (options.write_files) {
    const std::filesystem::path dir = output_directory(config, options);
    write_file(dir / "relentropy.csv", result.relentropy_csv);
    if (config.outputs.snapshots) {
      write_file(dir / "class1_snapshots.csv", snaps1.str());
      write_file(dir / "class2_snapshots.csv", snaps2.str());
    }
  }
  return result;
}

void fit_gronwall(SweepResult& result) {
  double C = 0.0;
  for (const auto& m : result.members) {
    if (!m.ok) continue;
    std::vector<double> ts, logs;
    for (const auto& r : m.run.series) {
      if (r.t > 0.0 && r.H > 0.0) {
        ts.push_back(r.t);
        logs.push_back(std::log(r.H));
      }
    }
    if (ts.size() < 2) continue;
    double mt = 0.0, ml = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      mt += ts[k];
      ml += logs[k];
    }
    mt /= static_cast<double>(ts.size());
    ml /= static_cast<double>(ts.size());
    double stt = 0.0, stl = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      stt += (ts[k] - mt) * (ts[k] - mt);
      stl += (ts[k] - mt) * (logs[k] - ml);
    }
    if (stt > 0.0) C = std::max(C, stl / stt);
  }
  double K = 0.0;
  for (const auto& m : result.members) {
    if (!m.ok) continue;
    for (const auto& r : m.run.series)
      K = std::max(K, (r.H * std::exp(-C * r.t) - m.H0) / m.epsilon);
  }
  result.gronwall_C = C;
  result.gronwall_K = K;
}

SweepResult run_sweep(const RunConfig& config, const RunOptions& options) {
  const auto& eps = config.epsilon_sweep;
  if (eps.size() < 3)
    throw PreconditionError("sweep: at least three epsilon values are required");
  const auto [lo, hi] = std::minmax_element(eps.begin(), eps.end());
  if (*hi / *lo < 100.0 * (1.0 - 1e-12))
    throw PreconditionError("sweep: epsilon values must span at least two decades");

  SweepResult result;
  result.members.resize(eps.size());
  const std::filesystem::path dir = output_directory(config, options);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min(options.workers ? *options.workers : config.sweep.workers,
                                        eps.size()));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < eps.size(); k = next++) {
      SweepMember& m = result.members[k];
      m.epsilon = eps[k];
      RunOptions member_options = options;
      member_options.directory = (dir / ("eps_" + std::to_string(k))).string();
      const auto t0 = std::chrono::steady_clock::now();
      try {
        m.run = run_paired(config, eps[k], member_options);
        m.ok = true;
        m.H0 = m.run.H0();
        m.H_end = m.run.H_end();
        m.steps = m.run.steps;
      } catch (const std::exception& e) {
        m.ok = false;
        m.error = e.what();
      }
      m.runtime_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  result.all_ok = std::all_of(result.members.begin(), result.members.end(),
                              [](const SweepMember& m) { return m.ok; });
  result.ill_prepared = std::any_of(result.members.begin(), result.members.end(),
                                    [](const SweepMember& m) { return m.ok && m.H0 > 0.0; });
  if (result.all_ok) {
    std::vector<double> x, y;
    for (const auto& m : result.members) {
      x.push_back(m.epsilon);
      y.push_back(m.H_end);
    }
    try {
      result.fit = fit_rate(x, y);
      result.slope_pass = result.fit->slope >= config.sweep.slope_threshold;
    } catch (const DomainError&) {
      result.fit.reset();
    }
    // Ordered by decreasing epsilon, H(t_end) must not grow beyond the slack.
    std::vector<std::size_t> order(eps.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return eps[a] > eps[b]; });
    result.monotone = true;
    for (std::size_t k = 1; k < order.size(); ++k)
      if (result.members[order[k]].H_end >
          (1.0 + config.sweep.monotonicity_slack) * result.members[order[k - 1]].H_end)
        result.monotone = false;
    fit_gronwall(result);
  }

  if (options.write_files) {
    std::ostringstream out, timing;
    out << "epsilon,status,steps,H0,H_end\n";
    timing << "epsilon,runtime_s\n";
    for (const auto& m : result.members) {
      out << csv::format(m.epsilon) << ',' << (m.ok ? "ok" : "failed") << ',' << m.steps << ','
          << csv::format(m.H0) << ',' << csv::format(m.H_end) << '\n';
      timing << csv::format(m.epsilon) << ',' << csv::format(m.runtime_s) << '\n';
    }
    write_file(dir / "sweep.csv", out.str());
    write_file(dir / "sweep_timing.csv", timing.str());
  }
  return result;
}

ResidualSample residual_sample(const RunConfig& config, double epsilon, std::size_t steps) {
  if (steps < 2) throw PreconditionError("residual_sample: need at least two steps");
  const FrictionMatrix friction = config.friction(epsilon);
  const Class1Solver c1(config.grid, config.thermo, friction, config.sources);
  StateI s = initial_class1(config, c1);
  std::vector<StateI> history{s};
  std::vector<double> times{0.0};
  double t = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double dt = config.time.dt ? *config.time.dt : c1.cfl_dt(s, config.time.cfl_number);
    c1.step(s, t, dt);
    t += dt;
    history.push_back(s);
    times.push_back(t);
    if (history.size() > 3) {
      history.erase(history.begin());
      times.erase(times.begin());
    }
  }
  const Residuals r = residuals(history, times, config.grid);
  return {epsilon, r.R_norm, r.Q_norm};
}

}  // namespace frictionlab
