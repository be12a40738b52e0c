#pragma once

#include <cstddef>
#include <vector>

#include "solitwave/model.hpp"
#include "solitwave/nonlinearity.hpp"
#include "solitwave/profile.hpp"
#include "solitwave/spectral.hpp"

namespace solitwave {

// Time-dependent states reuse WaveProfile with psi = eta and v = u.

struct PropagationConfig {
  double dt = 1e-3;
  double t_final = 10.0;
  double theta = 0.5;
  /// Record a snapshot every this many steps (0 disables intermediate snapshots).
  std::size_t snapshot_stride = 0;
  bool dealias = false;

  void validate() const;
};

/// Per-mode symbols of the linear evolution operator.
///
/// w1, w2 are the coupling symbols (purely imaginary); l1, l2 multiply the
/// spectra of H1 and H2. Odd symbols vanish at the Nyquist mode.
struct EvolutionSymbols {
  std::vector<Complex> w1, w2, l1, l2;
  /// 1 - dt^2 W1 W2 theta^2
  std::vector<double> denominator;
  double dt = 0.0;
  double theta = 0.5;
};

/// Throws StabilityConfigError if the implicit denominator vanishes at some mode.
EvolutionSymbols build_symbols(const Grid& grid, const ModelParams& params, double dt, double theta);

/// One theta-scheme step. Throws BlowUpError on non-finite output.
WaveProfile step(SpectralWorkspace& ws, const WaveProfile& state, const EvolutionSymbols& sym, const Nonlinearity& nl,
                 bool dealias = false);

struct Snapshot {
  double t = 0.0;
  WaveProfile state;
};

struct PropagationDiagnostics {
  std::size_t steps = 0;
  /// Length of the trailing partial step, 0 when t_final is a multiple of dt.
  double partial_step = 0.0;
  std::vector<double> times;
  std::vector<double> max_norm;
  /// Largest |Im| of the zero and Nyquist modes relative to the state max-norm.
  double reality_defect = 0.0;
};

struct PropagationResult {
  WaveProfile final_state;
  std::vector<Snapshot> snapshots;
  PropagationDiagnostics diagnostics;
};

/// Steps floor(t_final/dt) times, then one partial step for any remainder.
/// Snapshots always include t = 0 and the final time.
PropagationResult propagate(const WaveProfile& initial, const ModelParams& params, const Nonlinearity& nl,
                            const PropagationConfig& cfg);

struct TranslationErrors {
  double inf_u = 0.0;
  double inf_eta = 0.0;
  double l2_u = 0.0;
  double l2_eta = 0.0;
};

/// Relative errors of computed against reference shifted by omega t.
TranslationErrors verify_translation(const WaveProfile& computed, const WaveProfile& reference, double omega, double t);

}  // namespace solitwave
