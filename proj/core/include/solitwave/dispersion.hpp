#pragma once

#include "solitwave/model.hpp"

namespace solitwave {

/// Linear symbol of the traveling-wave system at one wavenumber, acting on
/// (v_hat, psi_hat):
///   eq1: d11 v + d12 psi,  eq2: d21 v + d22 psi.
struct DispersionEntries {
  double d11 = 0.0;
  double d12 = 0.0;
  double d21 = 0.0;
  double d22 = 0.0;

  double det() const noexcept { return d11 * d22 - d21 * d12; }
};

inline DispersionEntries dispersion_entries(const ModelParams& p, double k) noexcept {
  const double k2 = k * k;
  const double k4 = k2 * k2;
  const double w = p.omega();
  return {
      -w * (1.0 + p.d() * k2 + p.d2() * k4),
      1.0 - p.c() * k2 + p.c2() * k4,
      1.0 - p.a() * k2 + p.a2() * k4,
      -w * (1.0 + p.b() * k2 + p.b2() * k4),
  };
}

}  // namespace solitwave
