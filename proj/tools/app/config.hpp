#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "solitwave/collocation.hpp"
#include "solitwave/errors.hpp"
#include "solitwave/model.hpp"
#include "solitwave/petviashvili.hpp"
#include "solitwave/profile.hpp"
#include "solitwave/propagator.hpp"

namespace solitwave::app {

/// Configuration problem tied to a place in the file: "path:line:col: key: message".
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

enum class NonlinearityKind { Homogeneous, Quartic };

struct RunConfig {
  std::filesystem::path source;

  DispersionCoefficients coeffs;
  double omega = 0.0;
  RegimeCheck regime_check = RegimeCheck::General;

  double length = 0.0;
  std::size_t n = 0;

  NonlinearityKind kind = NonlinearityKind::Homogeneous;
  int p = 1;

  GaussianPulse psi0;
  GaussianPulse v0;

  SolveConfig petviashvili;
  NewtonConfig newton;
  PropagationConfig propagation;
  /// Relative L2 translation error above which propagate exits with a numerical failure.
  std::optional<double> propagation_tolerance;

  std::vector<double> sweep_omega;
  std::vector<int> sweep_p;

  ModelParams params() const { return ModelParams(coeffs, omega, regime_check); }
  ModelParams params(double w) const { return ModelParams(coeffs, w, regime_check); }
  Grid grid() const { return Grid(length, n); }
  Nonlinearity nonlinearity() const;

  /// Every setting after defaults are applied, for the run manifest.
  nlohmann::ordered_json resolved() const;
};

/// Parses a YAML run configuration. Unknown keys, missing required keys and
/// type errors raise ConfigError with the offending position and key path.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, const std::filesystem::path& source = "<string>");

}  // namespace solitwave::app
