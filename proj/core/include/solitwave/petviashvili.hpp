#pragma once

#include <string>
#include <vector>

#include "solitwave/functionals.hpp"
#include "solitwave/model.hpp"
#include "solitwave/nonlinearity.hpp"
#include "solitwave/profile.hpp"
#include "solitwave/spectral.hpp"

namespace solitwave {

/// Per-mode entries of the 2x2 traveling-wave symbol on the half spectrum.
struct DispersionMatrix {
  std::vector<double> d11, d12, d21, d22, det;
};

/// Throws SingularDispersionError when det vanishes (to within 1e-14 of the
/// mode's entry scale) at any retained mode.
DispersionMatrix build_dispersion(const Grid& grid, const ModelParams& params);

struct StabilizingFactors {
  double m_s = 0.0;
  double n_s = 0.0;
};

/// Throws DegenerateStateError when either denominator vanishes.
StabilizingFactors stabilizing_factors(SpectralWorkspace& ws, const WaveProfile& w, const DispersionMatrix& disp,
                                       const Nonlinearity& nl);

/// x^((p+1)/p) for odd p (x of either sign gives |x|^q), sign(x)|x|^q for even p.
double stabilizer_power(double x, int p);

struct IterationStep {
  WaveProfile next;
  StabilizingFactors factors;
  bool negative_factor = false;
  /// max-norm of the residual fields of the input state.
  double residual_inf = 0.0;
};

IterationStep iterate_once(SpectralWorkspace& ws, const WaveProfile& w, const DispersionMatrix& disp,
                           const Nonlinearity& nl, int p, bool dealias = false);

struct SolveConfig {
  double tol = 1e-10;
  int max_iter = 1000;
  double divergence_guard = 1e6;
  int growth_limit = 50;
  double collapse_threshold = 1e-12;
  double eps_floor = 1e-14;
  bool record_history = true;
  bool dealias = false;

  void validate() const;
};

enum class Termination { Converged, MaxIter, Diverged, CollapsedToZero };

const char* to_string(Termination t);

struct IterationRecord {
  double relative_change = 0.0;
  double m_s = 0.0;
  double n_s = 0.0;
  double residual_inf = 0.0;
};

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  Termination termination = Termination::MaxIter;
  std::vector<IterationRecord> history;
  FunctionalReport final;
  /// Stabilizing factors re-evaluated at the returned profile.
  StabilizingFactors final_factors;
  /// A negative stabilizing factor appeared after the first 10 iterations.
  bool sign_degenerate = false;
  bool in_regime = true;
  std::vector<std::string> warnings;
};

struct PetviashviliResult {
  WaveProfile profile;
  SolveReport report;
};

/// Stabilized fixed-point iteration. nl must be HomogeneousPower.
PetviashviliResult petviashvili_solve(const WaveProfile& initial, const ModelParams& params, const Nonlinearity& nl,
                                      const SolveConfig& cfg = {});

}  // namespace solitwave
