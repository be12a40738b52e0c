#pragma once

#include <vector>

#include "solitwave/model.hpp"
#include "solitwave/nonlinearity.hpp"
#include "solitwave/profile.hpp"
#include "solitwave/spectral.hpp"

namespace solitwave {

struct FunctionalReport {
  double i1 = 0.0;
  double i2 = 0.0;
  double i_omega = 0.0;  // i1 - 2 omega i2
  double k = 0.0;
  double n = 0.0;
  double p_omega = 0.0;  // i_omega - n
  double j_omega = 0.0;  // i_omega / 2 - k
  double residual_inf = 0.0;
  double residual_l2 = 0.0;
  /// max(|psi|_inf, |v|_inf); not part of the serialized report.
  double amplitude = 0.0;

  double relative_residual_inf() const noexcept { return amplitude > 0.0 ? residual_inf / amplitude : residual_inf; }
  double relative_residual_l2() const noexcept { return amplitude > 0.0 ? residual_l2 / amplitude : residual_l2; }
};

/// The two traveling-wave residual fields.
struct ResidualFields {
  std::vector<double> r1;
  std::vector<double> r2;
};

struct NormEquivalence {
  double m1 = 0.0;
  double m2 = 0.0;
  /// False when omega lies outside the admissible regime; m1 may then be <= 0.
  bool in_regime = true;
};

/// Terms of the sum-of-squares rewrite of I_omega. Each is an integral over
/// the domain; their sum equals I_omega.
struct IOmegaDecomposition {
  double psi_minus_omega_v = 0.0;    // (psi - omega v)^2
  double first_derivative_square = 0.0;
  double second_derivative_square = 0.0;
  double v_remainder = 0.0;           // (1 - omega^2) v^2
  double v_x_remainder = 0.0;
  double v_xx_remainder = 0.0;

  double total() const noexcept {
    return psi_minus_omega_v + first_derivative_square + second_derivative_square + v_remainder + v_x_remainder +
           v_xx_remainder;
  }
};

double eval_I1(SpectralWorkspace& ws, const WaveProfile& w, const ModelParams& params);
double eval_I2(SpectralWorkspace& ws, const WaveProfile& w, const ModelParams& params);
/// Throws UnsupportedFunctionalError when nl has no potential F.
double eval_K(SpectralWorkspace& ws, const WaveProfile& w, const Nonlinearity& nl);
/// Throws UnsupportedFunctionalError when nl has no grad F.
double eval_N(SpectralWorkspace& ws, const WaveProfile& w, const Nonlinearity& nl);

ResidualFields residual_fields(SpectralWorkspace& ws, const WaveProfile& w, const ModelParams& params,
                               const Nonlinearity& nl);

FunctionalReport eval_all(SpectralWorkspace& ws, const WaveProfile& w, const ModelParams& params,
                          const Nonlinearity& nl);
FunctionalReport eval_all(const WaveProfile& w, const ModelParams& params, const Nonlinearity& nl);

NormEquivalence norm_equivalence_constants(const ModelParams& params);

/// Quadrature of psi^2 + v^2 + psi'^2 + v'^2 + psi''^2 + v''^2.
double h2_norm_squared(SpectralWorkspace& ws, const WaveProfile& w);

IOmegaDecomposition i_omega_decomposition(SpectralWorkspace& ws, const WaveProfile& w, const ModelParams& params);

/// psi, v and their first two derivatives on the grid.
struct ProfileDerivatives {
  std::vector<double> psi, psi_x, psi_xx;
  std::vector<double> v, v_x, v_xx;

  JetFields jets() const;
};

ProfileDerivatives profile_derivatives(SpectralWorkspace& ws, const WaveProfile& w);

}  // namespace solitwave
