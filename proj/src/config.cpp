#include "frictionlab/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "frictionlab/errors.hpp"
#include "frictionlab/manufactured.hpp"

namespace frictionlab {

FrictionMatrix RunConfig::friction(double eps) const {
  return FrictionMatrix::from_upper(species(), friction_upper, eps);
}

double RunConfig::primary_epsilon() const {
  if (epsilon) return *epsilon;
  if (!epsilon_sweep.empty()) return epsilon_sweep.front();
  throw PreconditionError("config: no epsilon given");
}

RunConfig default_config() {
  RunConfig c;
  c.thermo.R = {1.0, 0.5};
  c.thermo.c = {1.5, 2.5};
  c.friction_upper = {1.0};
  c.epsilon = 1e-2;
  return c;
}

std::string to_string(IcPreset preset) {
  switch (preset) {
    case IcPreset::uniform: return "uniform";
    case IcPreset::sine: return "sine";
    case IcPreset::gaussian_bump: return "gaussian_bump";
    case IcPreset::two_state: return "two_state";
  }
  return "?";
}

std::string to_string(FrictionIntegrator integrator) {
  return integrator == FrictionIntegrator::exponential ? "exponential" : "implicit_midpoint";
}

namespace {

class Reader {
 public:
  explicit Reader(std::vector<std::string>& issues) : issues_(issues) {}

  bool is_map(const YAML::Node& node, const std::string& path) {
    if (!node || node.IsNull()) return false;
    if (!node.IsMap()) {
      issues_.push_back(path + ": expected a mapping");
      return false;
    }
    return true;
  }

  void keys(const YAML::Node& node, const std::string& path,
            std::initializer_list<const char*> allowed) {
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (std::none_of(allowed.begin(), allowed.end(),
                       [&](const char* a) { return key == a; }))
        issues_.push_back(path + (path.empty() ? "" : ".") + key + ": unknown key");
    }
  }

  template <class T>
  void get(const YAML::Node& node, const char* key, const std::string& path, T& out) {
    const YAML::Node child = node[key];
    if (!child) return;
    try {
      out = child.as<T>();
    } catch (const YAML::Exception&) {
      issues_.push_back(path + "." + key + ": wrong type");
    }
  }

  template <class T>
  void get(const YAML::Node& node, const char* key, const std::string& path,
           std::optional<T>& out) {
    const YAML::Node child = node[key];
    if (!child || child.IsNull()) return;
    T value{};
    try {
      value = child.as<T>();
      out = value;
    } catch (const YAML::Exception&) {
      issues_.push_back(path + "." + key + ": wrong type");
    }
  }

  void waveform(const YAML::Node& node, const std::string& path, Waveform& out) {
    if (!is_map(node, path)) return;
    keys(node, path, {"mean", "amplitude", "wavenumber", "frequency", "phase"});
    get(node, "mean", path, out.mean);
    get(node, "amplitude", path, out.amplitude);
    get(node, "wavenumber", path, out.wavenumber);
    get(node, "frequency", path, out.frequency);
    get(node, "phase", path, out.phase);
  }

 private:
  std::vector<std::string>& issues_;
};

void parse_into(const YAML::Node& root, RunConfig& c, std::vector<std::string>& issues) {
  Reader r(issues);
  if (!root || root.IsNull()) return;
  if (!root.IsMap()) {
    issues.push_back("config: top level must be a mapping");
    return;
  }
  r.keys(root, "", {"thermo", "friction", "grid", "ic", "time", "sources", "outputs",
                    "sweep", "diagnostics", "identity"});

  if (const auto n = root["thermo"]; r.is_map(n, "thermo")) {
    r.keys(n, "thermo", {"R", "c", "gamma", "M", "rho_floor"});
    r.get(n, "R", "thermo", c.thermo.R);
    r.get(n, "c", "thermo", c.thermo.c);
    r.get(n, "gamma", "thermo", c.thermo.validity.gamma);
    r.get(n, "M", "thermo", c.thermo.validity.M);
    r.get(n, "rho_floor", "thermo", c.thermo.rho_floor);
  }
  if (const auto n = root["friction"]; r.is_map(n, "friction")) {
    r.keys(n, "friction", {"b", "epsilon", "epsilon_sweep", "integrator"});
    r.get(n, "b", "friction", c.friction_upper);
    c.epsilon.reset();  // an explicit friction block must name its epsilon
    r.get(n, "epsilon", "friction", c.epsilon);
    r.get(n, "epsilon_sweep", "friction", c.epsilon_sweep);
    std::string integrator = to_string(c.integrator);
    r.get(n, "integrator", "friction", integrator);
    if (integrator == "exponential")
      c.integrator = FrictionIntegrator::exponential;
    else if (integrator == "implicit_midpoint")
      c.integrator = FrictionIntegrator::implicit_midpoint;
    else
      issues.push_back("friction.integrator: expected exponential or implicit_midpoint, got '" +
                       integrator + "'");
  }
  if (const auto n = root["grid"]; r.is_map(n, "grid")) {
    r.keys(n, "grid", {"ncells", "length"});
    r.get(n, "ncells", "grid", c.grid.ncells);
    r.get(n, "length", "grid", c.grid.length);
  }
  if (const auto n = root["ic"]; r.is_map(n, "ic")) {
    r.keys(n, "ic", {"preset", "well_prepared", "velocity_mismatch", "rho", "v", "theta",
                     "rho_amplitude", "v_amplitude", "theta_amplitude", "wavenumber",
                     "center", "width", "rho_inner", "v_inner", "theta_inner"});
    std::string preset = to_string(c.ic.preset);
    r.get(n, "preset", "ic", preset);
    if (preset == "uniform") c.ic.preset = IcPreset::uniform;
    else if (preset == "sine") c.ic.preset = IcPreset::sine;
    else if (preset == "gaussian_bump") c.ic.preset = IcPreset::gaussian_bump;
    else if (preset == "two_state") c.ic.preset = IcPreset::two_state;
    else issues.push_back("ic.preset: unknown preset '" + preset + "'");
    r.get(n, "well_prepared", "ic", c.ic.well_prepared);
    r.get(n, "velocity_mismatch", "ic", c.ic.velocity_mismatch);
    r.get(n, "rho", "ic", c.ic.rho);
    r.get(n, "v", "ic", c.ic.v);
    r.get(n, "theta", "ic", c.ic.theta);
    r.get(n, "rho_amplitude", "ic", c.ic.rho_amplitude);
    r.get(n, "v_amplitude", "ic", c.ic.v_amplitude);
    r.get(n, "theta_amplitude", "ic", c.ic.theta_amplitude);
    r.get(n, "wavenumber", "ic", c.ic.wavenumber);
    r.get(n, "center", "ic", c.ic.center);
    r.get(n, "width", "ic", c.ic.width);
    r.get(n, "rho_inner", "ic", c.ic.rho_inner);
    r.get(n, "v_inner", "ic", c.ic.v_inner);
    r.get(n, "theta_inner", "ic", c.ic.theta_inner);
  }
  if (const auto n = root["time"]; r.is_map(n, "time")) {
    r.keys(n, "time", {"t_end", "cfl_number", "snapshot_interval", "dt"});
    r.get(n, "t_end", "time", c.time.t_end);
    r.get(n, "cfl_number", "time", c.time.cfl_number);
    r.get(n, "snapshot_interval", "time", c.time.snapshot_interval);
    r.get(n, "dt", "time", c.time.dt);
  }
  if (const auto n = root["sources"]; r.is_map(n, "sources")) {
    r.keys(n, "sources", {"kappa", "kappa_min", "body_force", "heat_supply"});
    if (const auto k = n["kappa"]; r.is_map(k, "sources.kappa")) {
      r.keys(k, "sources.kappa", {"k0", "k1"});
      r.get(k, "k0", "sources.kappa", c.sources.kappa.k0);
      r.get(k, "k1", "sources.kappa", c.sources.kappa.k1);
    }
    r.get(n, "kappa_min", "sources", c.sources.kappa_min);
    if (const auto b = n["body_force"]; b && !b.IsNull()) {
      if (!b.IsSequence()) {
        issues.push_back("sources.body_force: expected a list of waveforms");
      } else {
        c.sources.body_force.assign(b.size(), Waveform{});
        for (std::size_t i = 0; i < b.size(); ++i)
          r.waveform(b[i], "sources.body_force[" + std::to_string(i) + "]",
                     c.sources.body_force[i]);
      }
    }
    if (const auto h = n["heat_supply"]; h) r.waveform(h, "sources.heat_supply", c.sources.heat_supply);
  }
  if (const auto n = root["outputs"]; r.is_map(n, "outputs")) {
    r.keys(n, "outputs", {"directory", "formats", "snapshots"});
    r.get(n, "directory", "outputs", c.outputs.directory);
    r.get(n, "formats", "outputs", c.outputs.formats);
    r.get(n, "snapshots", "outputs", c.outputs.snapshots);
  }
  if (const auto n = root["sweep"]; r.is_map(n, "sweep")) {
    r.keys(n, "sweep", {"slope_threshold", "workers", "monotonicity_slack"});
    r.get(n, "slope_threshold", "sweep", c.sweep.slope_threshold);
    r.get(n, "workers", "sweep", c.sweep.workers);
    r.get(n, "monotonicity_slack", "sweep", c.sweep.monotonicity_slack);
  }
  if (const auto n = root["diagnostics"]; r.is_map(n, "diagnostics")) {
    r.keys(n, "diagnostics", {"coercivity_constant", "residuals"});
    r.get(n, "coercivity_constant", "diagnostics", c.diagnostics.coercivity_constant);
    r.get(n, "residuals", "diagnostics", c.diagnostics.residuals);
  }
  if (const auto n = root["identity"]; r.is_map(n, "identity")) {
    r.keys(n, "identity", {"pairs", "ncells", "dt", "levels", "min_order"});
    r.get(n, "pairs", "identity", c.identity.pairs);
    r.get(n, "ncells", "identity", c.identity.ncells);
    r.get(n, "dt", "identity", c.identity.dt);
    r.get(n, "levels", "identity", c.identity.levels);
    r.get(n, "min_order", "identity", c.identity.min_order);
  }
}

template <class F>
void capture(std::vector<std::string>& issues, const std::string& prefix, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    issues.push_back(prefix + ": " + e.what());
  }
}

}  // namespace

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> issues;
  const std::size_t n = c.species();
  capture(issues, "thermo", [&] { c.thermo.validate(); });
  if (n < 2) issues.push_back("thermo: at least two species are required");
  if (n > 15) issues.push_back("thermo: at most 15 species are supported");

  if (c.friction_upper.size() != n * (n - 1) / 2)
    issues.push_back("friction.b: expected " + std::to_string(n * (n - 1) / 2) +
                     " upper-triangular entries, got " + std::to_string(c.friction_upper.size()));
  for (double b : c.friction_upper)
    if (!(b > 0.0)) issues.push_back("friction.b: entries must be positive");
  if (!c.epsilon && c.epsilon_sweep.empty())
    issues.push_back("friction: one of epsilon or epsilon_sweep is required");
  if (c.epsilon && !(*c.epsilon > 0.0)) issues.push_back("friction.epsilon: must be positive");
  for (double e : c.epsilon_sweep)
    if (!(e > 0.0)) issues.push_back("friction.epsilon_sweep: entries must be positive");

  if (c.grid.ncells < 4) issues.push_back("grid.ncells: must be at least 4");
  if (!(c.grid.length > 0.0)) issues.push_back("grid.length: must be positive");

  const auto& ic = c.ic;
  const auto& dom = c.thermo.validity;
  auto check_vec = [&](const std::vector<double>& v, const char* key, bool densities) {
    if (!v.empty() && v.size() != n)
      issues.push_back(std::string("ic.") + key + ": expected " + std::to_string(n) + " entries");
    if (densities)
      for (double x : v)
        if (!(x > 0.0)) issues.push_back(std::string("ic.") + key + ": densities must be positive");
  };
  check_vec(ic.rho, "rho", true);
  check_vec(ic.rho_amplitude, "rho_amplitude", false);
  check_vec(ic.rho_inner, "rho_inner", true);
  if (!dom.contains(ic.theta)) issues.push_back("ic.theta: outside the validity domain");
  if (ic.preset == IcPreset::two_state && !dom.contains(ic.theta_inner))
    issues.push_back("ic.theta_inner: outside the validity domain");
  if (ic.wavenumber < 1) issues.push_back("ic.wavenumber: must be at least 1");
  if (!(ic.width > 0.0)) issues.push_back("ic.width: must be positive");
  if (ic.center < 0.0 || ic.center > 1.0) issues.push_back("ic.center: must lie in [0, 1]");

  if (!(c.time.t_end > 0.0)) issues.push_back("time.t_end: must be positive");
  if (!(c.time.cfl_number > 0.0 && c.time.cfl_number <= 1.0))
    issues.push_back("time.cfl_number: must lie in (0, 1]");
  if (c.time.snapshot_interval < 0.0) issues.push_back("time.snapshot_interval: must be >= 0");
  if (c.time.dt && !(*c.time.dt > 0.0)) issues.push_back("time.dt: must be positive");

  if (n >= 1) capture(issues, "sources", [&] { c.sources.validate(n, dom); });

  for (const auto& f : c.outputs.formats)
    if (f != "csv") issues.push_back("outputs.formats: unsupported format '" + f + "'");
  if (c.outputs.directory.empty()) issues.push_back("outputs.directory: must not be empty");

  if (c.sweep.workers < 1) issues.push_back("sweep.workers: must be at least 1");
  if (c.sweep.monotonicity_slack < 0.0) issues.push_back("sweep.monotonicity_slack: must be >= 0");
  if (c.diagnostics.coercivity_constant < 0.0)
    issues.push_back("diagnostics.coercivity_constant: must be >= 0");

  std::set<std::string> known;
  for (const auto& p : builtin_manufactured_pairs()) known.insert(p.name);
  for (const auto& p : c.identity.pairs)
    if (!known.count(p)) issues.push_back("identity.pairs: unknown pair '" + p + "'");
  if (c.identity.ncells < 4) issues.push_back("identity.ncells: must be at least 4");
  if (!(c.identity.dt > 0.0)) issues.push_back("identity.dt: must be positive");
  if (c.identity.levels < 2) issues.push_back("identity.levels: must be at least 2");
  return issues;
}

RunConfig parse_config(const std::string& yaml_text) {
  std::vector<std::string> issues;
  RunConfig c = default_config();
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError({std::string("config: not valid YAML: ") + e.what()});
  }
  parse_into(root, c, issues);
  // Fields that failed to parse keep their defaults, so the invariant checks
  // still see a complete config and can report alongside the parse errors.
  for (auto& issue : validate(c)) issues.push_back(std::move(issue));
  if (!issues.empty()) throw ConfigError(issues);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"config: cannot open '" + path + "'"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

std::string num(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, res.ptr);
  // Keep floats recognizable as floats to YAML readers.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + "]";
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string waveform(const Waveform& w) {
  return "{mean: " + num(w.mean) + ", amplitude: " + num(w.amplitude) +
         ", wavenumber: " + num(w.wavenumber) + ", frequency: " + num(w.frequency) +
         ", phase: " + num(w.phase) + "}";
}

}  // namespace

std::string to_yaml(const RunConfig& c) {
  std::ostringstream os;
  os << "thermo:\n"
     << "  R: " << list(c.thermo.R) << "\n"
     << "  c: " << list(c.thermo.c) << "\n"
     << "  gamma: " << num(c.thermo.validity.gamma) << "\n"
     << "  M: " << num(c.thermo.validity.M) << "\n"
     << "  rho_floor: " << num(c.thermo.rho_floor) << "\n";
  os << "friction:\n"
     << "  b: " << list(c.friction_upper) << "\n";
  if (c.epsilon) os << "  epsilon: " << num(*c.epsilon) << "\n";
  if (!c.epsilon_sweep.empty()) os << "  epsilon_sweep: " << list(c.epsilon_sweep) << "\n";
  os << "  integrator: " << to_string(c.integrator) << "\n";
  os << "grid:\n"
     << "  ncells: " << c.grid.ncells << "\n"
     << "  length: " << num(c.grid.length) << "\n";
  const auto& ic = c.ic;
  os << "ic:\n"
     << "  preset: " << to_string(ic.preset) << "\n"
     << "  well_prepared: " << (ic.well_prepared ? "true" : "false") << "\n"
     << "  velocity_mismatch: " << num(ic.velocity_mismatch) << "\n"
     << "  rho: " << list(ic.rho) << "\n"
     << "  v: " << num(ic.v) << "\n"
     << "  theta: " << num(ic.theta) << "\n"
     << "  rho_amplitude: " << list(ic.rho_amplitude) << "\n"
     << "  v_amplitude: " << num(ic.v_amplitude) << "\n"
     << "  theta_amplitude: " << num(ic.theta_amplitude) << "\n"
     << "  wavenumber: " << ic.wavenumber << "\n"
     << "  center: " << num(ic.center) << "\n"
     << "  width: " << num(ic.width) << "\n"
     << "  rho_inner: " << list(ic.rho_inner) << "\n"
     << "  v_inner: " << num(ic.v_inner) << "\n"
     << "  theta_inner: " << num(ic.theta_inner) << "\n";
  os << "time:\n"
     << "  t_end: " << num(c.time.t_end) << "\n"
     << "  cfl_number: " << num(c.time.cfl_number) << "\n"
     << "  snapshot_interval: " << num(c.time.snapshot_interval) << "\n";
  if (c.time.dt) os << "  dt: " << num(*c.time.dt) << "\n";
  os << "sources:\n"
     << "  kappa: {k0: " << num(c.sources.kappa.k0) << ", k1: " << num(c.sources.kappa.k1) << "}\n"
     << "  kappa_min: " << num(c.sources.kappa_min) << "\n"
     << "  body_force: [";
  for (std::size_t i = 0; i < c.sources.body_force.size(); ++i)
    os << (i ? ", " : "") << waveform(c.sources.body_force[i]);
  os << "]\n"
     << "  heat_supply: " << waveform(c.sources.heat_supply) << "\n";
  os << "outputs:\n"
     << "  directory: " << quoted(c.outputs.directory) << "\n"
     << "  formats: [";
  for (std::size_t i = 0; i < c.outputs.formats.size(); ++i)
    os << (i ? ", " : "") << quoted(c.outputs.formats[i]);
  os << "]\n"
     << "  snapshots: " << (c.outputs.snapshots ? "true" : "false") << "\n";
  os << "sweep:\n"
     << "  slope_threshold: " << num(c.sweep.slope_threshold) << "\n"
     << "  workers: " << c.sweep.workers << "\n"
     << "  monotonicity_slack: " << num(c.sweep.monotonicity_slack) << "\n";
  os << "diagnostics:\n"
     << "  coercivity_constant: " << num(c.diagnostics.coercivity_constant) << "\n"
     << "  residuals: " << (c.diagnostics.residuals ? "true" : "false") << "\n";
  os << "identity:\n"
     << "  pairs: [";
  for (std::size_t i = 0; i < c.identity.pairs.size(); ++i)
    os << (i ? ", " : "") << quoted(c.identity.pairs[i]);
  os << "]\n"
     << "  ncells: " << c.identity.ncells << "\n"
     << "  dt: " << num(c.identity.dt) << "\n"
     << "  levels: " << c.identity.levels << "\n"
     << "  min_order: " << num(c.identity.min_order) << "\n";
  return os.str();
}

}  // namespace frictionlab
