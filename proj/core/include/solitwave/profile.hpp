#pragma once

#include <vector>

#include "solitwave/model.hpp"

namespace solitwave {

/// Paired samples of the elevation profile psi and the velocity profile v.
///
/// In time-dependent contexts the same container carries (eta, u): psi holds
/// the elevation eta and v the velocity u.
struct WaveProfile {
  Grid grid;
  std::vector<double> psi;
  std::vector<double> v;

  explicit WaveProfile(const Grid& g) : grid(g), psi(g.size(), 0.0), v(g.size(), 0.0) {}
  WaveProfile(const Grid& g, std::vector<double> psi_samples, std::vector<double> v_samples);

  /// max(|psi|_inf, |v|_inf)
  double max_norm() const;
  bool all_finite() const;
};

struct GaussianPulse {
  double center = 0.0;
  double width = 0.5;  // coefficient w in exp(-w (x - center)^2)
  double amplitude = 1.0;

  double operator()(double x) const;
};

/// psi_j = v_j = A exp(-w (x_j - a0)^2). Requires 0 <= a0 <= L.
WaveProfile gaussian_initial(const Grid& grid, double center, double width, double amplitude);

/// Independent pulses for psi and v (both centers must lie in [0, L]).
WaveProfile gaussian_initial(const Grid& grid, const GaussianPulse& psi, const GaussianPulse& v);

}  // namespace solitwave
