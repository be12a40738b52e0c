#include "solitwave/petviashvili.hpp"

#include <algorithm>
#include <cmath>

#include "solitwave/dispersion.hpp"
#include "solitwave/errors.hpp"

namespace solitwave {

namespace {

double max_abs(const std::vector<double>& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

// Spectra of the state and of the nonlinear terms, plus the numerators of the
// Cramer solve: A = H1 D22 - H2 D12 (for v), B = H2 D11 - H1 D21 (for psi).
struct Sweep {
  std::vector<Complex> psi_hat, v_hat, h1_hat, h2_hat, a, b;
  StabilizingFactors factors;
};

Sweep sweep(SpectralWorkspace& ws, const WaveProfile& w, const DispersionMatrix& disp, const Nonlinearity& nl,
            bool dealias) {
  if (!(ws.grid() == w.grid)) throw ValidationError("profile grid does not match the spectral workspace");
  if (disp.det.size() != ws.n_modes()) throw ValidationError("dispersion matrix does not match the grid");
  const std::size_t n = ws.size();
  const std::size_t modes = ws.n_modes();

  std::vector<double> h1(n), h2(n);
  if (nl.max_derivative_order() == 0) {
    nl.evaluate(JetFields{w.psi, {}, {}, w.v, {}, {}}, h1, h2);
  } else {
    const ProfileDerivatives d = profile_derivatives(ws, w);
    nl.evaluate(d.jets(), h1, h2);
  }

  Sweep s;
  s.psi_hat = ws.forward(w.psi);
  s.v_hat = ws.forward(w.v);
  s.h1_hat = ws.forward(h1);
  s.h2_hat = ws.forward(h2);
  if (dealias) {
    ws.dealias(s.h1_hat);
    ws.dealias(s.h2_hat);
  }
  s.a.resize(modes);
  s.b.resize(modes);

  double num_m = 0.0, den_m = 0.0, num_n = 0.0, den_n = 0.0;
  for (std::size_t m = 0; m < modes; ++m) {
    s.a[m] = s.h1_hat[m] * disp.d22[m] - s.h2_hat[m] * disp.d12[m];
    s.b[m] = s.h2_hat[m] * disp.d11[m] - s.h1_hat[m] * disp.d21[m];
    const double wt = hermitian_weight(m, n);
    num_m += wt * disp.det[m] * std::norm(s.v_hat[m]);
    den_m += wt * std::real(s.a[m] * std::conj(s.v_hat[m]));
    num_n += wt * disp.det[m] * std::norm(s.psi_hat[m]);
    den_n += wt * std::real(s.b[m] * std::conj(s.psi_hat[m]));
  }
  if (den_m == 0.0 || den_n == 0.0 || !std::isfinite(den_m) || !std::isfinite(den_n)) {
    throw DegenerateStateError("stabilizing factor denominator vanishes (zero or degenerate profile)");
  }
  s.factors = {num_m / den_m, num_n / den_n};
  return s;
}

}  // namespace

DispersionMatrix build_dispersion(const Grid& grid, const ModelParams& params) {
  const std::vector<double> k = wavenumbers(grid);
  DispersionMatrix d;
  for (auto* v : {&d.d11, &d.d12, &d.d21, &d.d22, &d.det}) v->resize(k.size());
  for (std::size_t m = 0; m < k.size(); ++m) {
    const DispersionEntries e = dispersion_entries(params, k[m]);
    d.d11[m] = e.d11;
    d.d12[m] = e.d12;
    d.d21[m] = e.d21;
    d.d22[m] = e.d22;
    d.det[m] = e.det();
    const double scale = std::max(std::abs(e.d11 * e.d22), std::abs(e.d21 * e.d12));
    if (d.det[m] == 0.0 || std::abs(d.det[m]) <= 1e-14 * scale) throw SingularDispersionError(m, d.det[m]);
  }
  return d;
}

StabilizingFactors stabilizing_factors(SpectralWorkspace& ws, const WaveProfile& w, const DispersionMatrix& disp,
                                       const Nonlinearity& nl) {
  return sweep(ws, w, disp, nl, false).factors;
}

double stabilizer_power(double x, int p) {
  const double q = static_cast<double>(p + 1) / static_cast<double>(p);
  const double mag = std::pow(std::abs(x), q);
  if (p % 2 == 1) return mag;
  return x < 0.0 ? -mag : mag;
}

IterationStep iterate_once(SpectralWorkspace& ws, const WaveProfile& w, const DispersionMatrix& disp,
                           const Nonlinearity& nl, int p, bool dealias) {
  if (p < 1) throw ValidationError("stabilizer exponent p must be >= 1");
  Sweep s = sweep(ws, w, disp, nl, dealias);
  const std::size_t modes = ws.n_modes();

  // Residual of the input state, a by-product of the spectra already at hand.
  std::vector<Complex> r1(modes), r2(modes);
  for (std::size_t m = 0; m < modes; ++m) {
    r1[m] = disp.d11[m] * s.v_hat[m] + disp.d12[m] * s.psi_hat[m] - s.h1_hat[m];
    r2[m] = disp.d21[m] * s.v_hat[m] + disp.d22[m] * s.psi_hat[m] - s.h2_hat[m];
  }
  const double res = std::max(max_abs(ws.inverse(r1)), max_abs(ws.inverse(r2)));

  const double fm = stabilizer_power(s.factors.m_s, p);
  const double fn = stabilizer_power(s.factors.n_s, p);
  std::vector<Complex> v_new(modes), psi_new(modes);
  for (std::size_t m = 0; m < modes; ++m) {
    v_new[m] = fm * s.a[m] / disp.det[m];
    psi_new[m] = fn * s.b[m] / disp.det[m];
  }
  return IterationStep{WaveProfile(w.grid, ws.inverse(psi_new), ws.inverse(v_new)), s.factors,
                       s.factors.m_s < 0.0 || s.factors.n_s < 0.0, res};
}

void SolveConfig::validate() const {
  if (!(tol > 0.0)) throw ValidationError("tol must be > 0");
  if (max_iter < 1) throw ValidationError("max_iter must be >= 1");
  if (!(divergence_guard > 0.0)) throw ValidationError("divergence_guard must be > 0");
  if (growth_limit < 1) throw ValidationError("growth_limit must be >= 1");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "Converged";
    case Termination::MaxIter: return "MaxIter";
    case Termination::Diverged: return "Diverged";
    case Termination::CollapsedToZero: return "CollapsedToZero";
  }
  return "?";
}

PetviashviliResult petviashvili_solve(const WaveProfile& initial, const ModelParams& params, const Nonlinearity& nl,
                                      const SolveConfig& cfg) {
  cfg.validate();
  const auto p = nl.homogeneity_exponent();
  if (!p) throw ValidationError("the fixed-point iteration requires a homogeneous power nonlinearity");
  if (!initial.all_finite()) throw ValidationError("initial profile contains non-finite samples");

  SpectralWorkspace ws(initial.grid);
  const DispersionMatrix disp = build_dispersion(initial.grid, params);

  SolveReport report;
  report.in_regime = check_velocity_in_regime(params);
  if (!report.in_regime) {
    report.warnings.push_back("omega lies outside the admissible velocity regime; existence is not guaranteed");
  }

  WaveProfile current = initial;
  double previous_change = INFINITY;
  int growth_streak = 0;
  report.termination = Termination::MaxIter;

  for (int it = 1; it <= cfg.max_iter; ++it) {
    IterationStep step = iterate_once(ws, current, disp, nl, *p, cfg.dealias);
    report.iterations = it;

    if (step.negative_factor && it > 10 && !report.sign_degenerate) {
      report.sign_degenerate = true;
      report.warnings.push_back("negative stabilizing factor at iteration " + std::to_string(it));
    }

    const double amp_psi = max_abs(step.next.psi);
    const double amp_v = max_abs(step.next.v);
    const double change = std::max(max_abs_diff(step.next.psi, current.psi) / std::max(amp_psi, cfg.eps_floor),
                                   max_abs_diff(step.next.v, current.v) / std::max(amp_v, cfg.eps_floor));
    if (cfg.record_history) {
      report.history.push_back({change, step.factors.m_s, step.factors.n_s, step.residual_inf});
    }

    const bool finite = step.next.all_finite();
    current = std::move(step.next);

    if (!finite || std::max(amp_psi, amp_v) > cfg.divergence_guard) {
      report.termination = Termination::Diverged;
      break;
    }
    if (std::max(amp_psi, amp_v) < cfg.collapse_threshold) {
      report.termination = Termination::CollapsedToZero;
      break;
    }
    if (change < cfg.tol) {
      report.termination = Termination::Converged;
      break;
    }
    growth_streak = change > previous_change ? growth_streak + 1 : 0;
    previous_change = change;
    if (growth_streak >= cfg.growth_limit) {
      report.termination = Termination::Diverged;
      report.warnings.push_back("relative change grew for " + std::to_string(growth_streak) +
                                " consecutive iterations");
      break;
    }
  }

  report.converged = report.termination == Termination::Converged;
  if (current.all_finite()) {
    report.final = eval_all(ws, current, params, nl);
    if (report.termination != Termination::CollapsedToZero) {
      try {
        report.final_factors = stabilizing_factors(ws, current, disp, nl);
      } catch (const DegenerateStateError&) {
        report.warnings.push_back("stabilizing factors undefined at the final iterate");
      }
    }
  }
  return PetviashviliResult{std::move(current), std::move(report)};
}

}  // namespace solitwave
