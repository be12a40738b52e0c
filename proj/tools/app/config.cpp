#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <initializer_list>
#include <limits>
#include <optional>

#include "solitwave/io.hpp"

namespace solitwave::app {

namespace {

std::string where(const std::string& file, const YAML::Mark& m) {
  if (m.is_null()) return file;
  return file + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1);
}

// A YAML mapping with a fixed set of permitted keys.
class Map {
 public:
  Map(const std::string& file, const YAML::Node& node, std::string path, std::initializer_list<const char*> keys)
      : file_(file), node_(node), path_(std::move(path)), keys_(keys.begin(), keys.end()) {
    if (!node_.IsMap()) fail(node_.Mark(), path_.empty() ? "<root>" : path_, "expected a mapping");
    for (const auto& kv : node_) {
      const std::string key = kv.first.Scalar();
      if (std::find(keys_.begin(), keys_.end(), key) == keys_.end()) {
        std::string allowed;
        for (const auto& k : keys_) allowed += (allowed.empty() ? "" : ", ") + k;
        fail(kv.first.Mark(), full(key), "unknown key (allowed: " + allowed + ")");
      }
    }
  }

  [[noreturn]] void fail(const YAML::Mark& m, const std::string& key, const std::string& msg) const {
    throw ConfigError(where(file_, m) + ": " + key + ": " + msg);
  }

  std::string full(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const char* key) const { return static_cast<bool>(node_[key]); }
  const YAML::Node& node() const { return node_; }
  const std::string& file() const { return file_; }

  YAML::Node required(const char* key) const {
    const YAML::Node n = node_[key];
    if (!n) fail(node_.Mark(), full(key), "missing required key");
    return n;
  }

  double number(const char* key) const { return to_number(required(key), key); }
  double number(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

  long long integer(const char* key) const { return to_integer(required(key), key); }
  long long integer(const char* key, long long fallback) const { return has(key) ? integer(key) : fallback; }

  bool boolean(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    const YAML::Node n = node_[key];
    try {
      if (n.IsScalar()) return n.as<bool>();
    } catch (const YAML::Exception&) {
    }
    fail(n.Mark(), full(key), "expected true or false");
  }

  std::string word(const char* key, std::initializer_list<const char*> choices, const char* fallback) const {
    if (!has(key)) return fallback;
    const YAML::Node n = node_[key];
    std::string s = n.IsScalar() ? n.Scalar() : std::string{};
    for (const char* c : choices) {
      if (s == c) return s;
    }
    std::string allowed;
    for (const char* c : choices) allowed += (allowed.empty() ? "" : ", ") + std::string(c);
    fail(n.Mark(), full(key), "expected one of " + allowed);
  }

  Map map(const char* key, std::initializer_list<const char*> keys) const {
    return Map(file_, required(key), full(key), keys);
  }

  std::vector<double> numbers(const char* key) const {
    const YAML::Node n = required(key);
    if (!n.IsSequence()) fail(n.Mark(), full(key), "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(to_number(n[i], key, i));
    return out;
  }

  std::vector<long long> integers(const char* key) const {
    const YAML::Node n = required(key);
    if (!n.IsSequence()) fail(n.Mark(), full(key), "expected a list of integers");
    std::vector<long long> out;
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(to_integer(n[i], key, i));
    return out;
  }

 private:
  std::string label(const char* key, std::optional<std::size_t> index) const {
    return index ? full(key) + "[" + std::to_string(*index) + "]" : full(key);
  }

  double to_number(const YAML::Node& n, const char* key, std::optional<std::size_t> index = {}) const {
    try {
      if (n.IsScalar()) return n.as<double>();
    } catch (const YAML::Exception&) {
    }
    fail(n.Mark(), label(key, index), "expected a number");
  }

  long long to_integer(const YAML::Node& n, const char* key, std::optional<std::size_t> index = {}) const {
    try {
      if (n.IsScalar()) return n.as<long long>();
    } catch (const YAML::Exception&) {
    }
    fail(n.Mark(), label(key, index), "expected an integer");
  }

  std::string file_;
  YAML::Node node_;
  std::string path_;
  std::vector<std::string> keys_;
};

GaussianPulse read_pulse(const Map& m) {
  GaussianPulse g;
  g.center = m.number("center");
  g.width = m.number("width", 0.5);
  g.amplitude = m.number("amplitude", 1.0);
  return g;
}

nlohmann::ordered_json pulse_json(const GaussianPulse& g) {
  return {{"center", g.center}, {"width", g.width}, {"amplitude", g.amplitude}};
}

}  // namespace

Nonlinearity RunConfig::nonlinearity() const {
  return kind == NonlinearityKind::Homogeneous ? Nonlinearity::homogeneous(p) : Nonlinearity::quartic();
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& source) {
  const std::string file = source.string();
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(where(file, e.mark) + ": " + e.msg);
  }
  if (!root || root.IsNull()) throw ConfigError(file + ": configuration is empty");

  const Map top(file, root, "",
                {"a", "b", "c", "d", "a2", "b2", "c2", "d2", "omega", "regime_check", "L", "N", "nonlinearity",
                 "initial", "petviashvili", "newton", "propagation", "sweep"});

  RunConfig cfg;
  cfg.source = source;
  cfg.coeffs = {top.number("a"),  top.number("b"),  top.number("c"),  top.number("d"),
                top.number("a2"), top.number("b2"), top.number("c2"), top.number("d2")};
  cfg.omega = top.number("omega");
  cfg.regime_check = top.word("regime_check", {"general", "theoretical"}, "general") == "theoretical"
                         ? RegimeCheck::Theoretical
                         : RegimeCheck::General;
  cfg.length = top.number("L");
  const long long n = top.integer("N");
  if (n <= 0) top.fail(top.required("N").Mark(), "N", "must be a positive power of two");
  cfg.n = static_cast<std::size_t>(n);

  const Map nl = top.map("nonlinearity", {"kind", "p"});
  const std::string kind = nl.word("kind", {"homogeneous", "quartic"}, "");
  if (kind.empty()) nl.fail(nl.node().Mark(), "nonlinearity.kind", "missing required key");
  if (kind == "homogeneous") {
    cfg.kind = NonlinearityKind::Homogeneous;
    const long long p = nl.integer("p");
    if (p < 1 || p > 64) nl.fail(nl.required("p").Mark(), "nonlinearity.p", "must be an integer in [1, 64]");
    cfg.p = static_cast<int>(p);
  } else {
    cfg.kind = NonlinearityKind::Quartic;
    if (nl.has("p")) nl.fail(nl.required("p").Mark(), "nonlinearity.p", "only applies to kind homogeneous");
    cfg.p = 0;
  }

  const Map init = top.map("initial", {"center", "width", "amplitude", "psi", "v"});
  const bool split = init.has("psi") || init.has("v");
  if (split) {
    if (init.has("center") || init.has("width") || init.has("amplitude")) {
      init.fail(init.node().Mark(), "initial", "give either a shared pulse or separate psi and v pulses, not both");
    }
    cfg.psi0 = read_pulse(init.map("psi", {"center", "width", "amplitude"}));
    cfg.v0 = read_pulse(init.map("v", {"center", "width", "amplitude"}));
  } else {
    cfg.psi0 = cfg.v0 = read_pulse(init);
  }

  if (top.has("petviashvili")) {
    const Map m = top.map("petviashvili",
                          {"tol", "max_iter", "divergence_guard", "growth_limit", "collapse_threshold", "dealias"});
    auto& s = cfg.petviashvili;
    s.tol = m.number("tol", s.tol);
    s.max_iter = static_cast<int>(m.integer("max_iter", s.max_iter));
    s.divergence_guard = m.number("divergence_guard", s.divergence_guard);
    s.growth_limit = static_cast<int>(m.integer("growth_limit", s.growth_limit));
    s.collapse_threshold = m.number("collapse_threshold", s.collapse_threshold);
    s.dealias = m.boolean("dealias", s.dealias);
  }

  if (top.has("newton")) {
    const Map m = top.map("newton", {"tol", "max_iter", "jacobian", "fd_step", "damping", "max_halvings",
                                     "collapse_threshold", "rcond_floor"});
    auto& s = cfg.newton;
    s.tol = m.number("tol", s.tol);
    s.max_iter = static_cast<int>(m.integer("max_iter", s.max_iter));
    s.jacobian_mode = m.word("jacobian", {"finite_difference", "analytic"}, "finite_difference") == "analytic"
                          ? JacobianMode::Analytic
                          : JacobianMode::FiniteDifference;
    s.fd_step = m.number("fd_step", s.fd_step);
    s.damping = m.word("damping", {"none", "backtracking"}, "none") == "backtracking" ? Damping::Backtracking
                                                                                      : Damping::None;
    s.max_halvings = static_cast<int>(m.integer("max_halvings", s.max_halvings));
    s.collapse_threshold = m.number("collapse_threshold", s.collapse_threshold);
    s.rcond_floor = m.number("rcond_floor", s.rcond_floor);
  }

  if (top.has("propagation")) {
    const Map m = top.map("propagation", {"dt", "t_final", "theta", "snapshot_stride", "dealias", "tolerance"});
    auto& s = cfg.propagation;
    s.dt = m.number("dt", s.dt);
    s.t_final = m.number("t_final", s.t_final);
    s.theta = m.number("theta", s.theta);
    const long long stride = m.integer("snapshot_stride", 0);
    if (stride < 0) m.fail(m.required("snapshot_stride").Mark(), "propagation.snapshot_stride", "must be >= 0");
    s.snapshot_stride = static_cast<std::size_t>(stride);
    s.dealias = m.boolean("dealias", s.dealias);
    if (m.has("tolerance")) cfg.propagation_tolerance = m.number("tolerance");
  }

  if (top.has("sweep")) {
    const Map m = top.map("sweep", {"omega", "p"});
    cfg.sweep_omega = m.numbers("omega");
    if (cfg.sweep_omega.empty()) m.fail(m.required("omega").Mark(), "sweep.omega", "must list at least one value");
    if (m.has("p")) {
      if (cfg.kind != NonlinearityKind::Homogeneous) {
        m.fail(m.required("p").Mark(), "sweep.p", "only applies to kind homogeneous");
      }
      for (long long p : m.integers("p")) {
        if (p < 1 || p > 64) m.fail(m.required("p").Mark(), "sweep.p", "entries must be integers in [1, 64]");
        cfg.sweep_p.push_back(static_cast<int>(p));
      }
      if (cfg.sweep_p.empty()) m.fail(m.required("p").Mark(), "sweep.p", "must list at least one value");
    }
  }

  // semantic checks shared with the library
  try {
    (void)cfg.params();
    for (double w : cfg.sweep_omega) (void)cfg.params(w);
    (void)cfg.grid();
    cfg.petviashvili.validate();
    cfg.newton.validate();
    cfg.propagation.validate();
  } catch (const ValidationError& e) {
    throw ConfigError(file + ": " + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_text(path);
  } catch (const ValidationError&) {
    throw ConfigError(path.string() + ": cannot read configuration file");
  }
  return parse_config(text, path);
}

nlohmann::ordered_json RunConfig::resolved() const {
  nlohmann::ordered_json j;
  j["a"] = coeffs.a;
  j["b"] = coeffs.b;
  j["c"] = coeffs.c;
  j["d"] = coeffs.d;
  j["a2"] = coeffs.a2;
  j["b2"] = coeffs.b2;
  j["c2"] = coeffs.c2;
  j["d2"] = coeffs.d2;
  j["omega"] = omega;
  j["regime_check"] = regime_check == RegimeCheck::Theoretical ? "theoretical" : "general";
  j["L"] = length;
  j["N"] = n;
  if (kind == NonlinearityKind::Homogeneous) {
    j["nonlinearity"] = {{"kind", "homogeneous"}, {"p", p}};
  } else {
    j["nonlinearity"] = {{"kind", "quartic"}};
  }
  j["initial"] = {{"psi", pulse_json(psi0)}, {"v", pulse_json(v0)}};
  j["petviashvili"] = {{"tol", petviashvili.tol},
                       {"max_iter", petviashvili.max_iter},
                       {"divergence_guard", petviashvili.divergence_guard},
                       {"growth_limit", petviashvili.growth_limit},
                       {"collapse_threshold", petviashvili.collapse_threshold},
                       {"dealias", petviashvili.dealias}};
  j["newton"] = {{"tol", newton.tol},
                 {"max_iter", newton.max_iter},
                 {"jacobian", newton.jacobian_mode == JacobianMode::Analytic ? "analytic" : "finite_difference"},
                 {"fd_step", newton.fd_step},
                 {"damping", newton.damping == Damping::Backtracking ? "backtracking" : "none"},
                 {"max_halvings", newton.max_halvings},
                 {"collapse_threshold", newton.collapse_threshold},
                 {"rcond_floor", newton.rcond_floor}};
  j["propagation"] = {{"dt", propagation.dt},
                      {"t_final", propagation.t_final},
                      {"theta", propagation.theta},
                      {"snapshot_stride", propagation.snapshot_stride},
                      {"dealias", propagation.dealias}};
  if (propagation_tolerance) j["propagation"]["tolerance"] = *propagation_tolerance;
  if (!sweep_omega.empty()) {
    j["sweep"] = {{"omega", sweep_omega}};
    if (!sweep_p.empty()) j["sweep"]["p"] = sweep_p;
  }
  return j;
}

}  // namespace solitwave::app
