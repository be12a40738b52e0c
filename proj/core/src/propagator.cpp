#include "solitwave/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "solitwave/errors.hpp"

namespace solitwave {

namespace {

double max_abs(std::span<const double> f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

struct SpectralState {
  std::vector<Complex> u_hat, eta_hat;
};

// Spectra of H1 and H2 evaluated on the physical state.
void nonlinear_spectra(SpectralWorkspace& ws, const WaveProfile& state, const SpectralState& s, const Nonlinearity& nl,
                       bool dealias, std::vector<Complex>& h1_hat, std::vector<Complex>& h2_hat) {
  const std::size_t n = ws.size();
  std::vector<double> h1(n), h2(n);
  if (nl.max_derivative_order() == 0) {
    nl.evaluate(JetFields{state.psi, {}, {}, state.v, {}, {}}, h1, h2);
  } else {
    const std::size_t modes = ws.n_modes();
    const std::size_t nyq = modes - 1;
    std::vector<Complex> t(modes);
    auto deriv = [&](const std::vector<Complex>& src, int order) {
      for (std::size_t m = 0; m < modes; ++m) t[m] = src[m] * derivative_symbol(ws.k()[m], order, m == nyq);
      return ws.inverse(t);
    };
    const std::vector<double> eta_x = deriv(s.eta_hat, 1), eta_xx = deriv(s.eta_hat, 2);
    const std::vector<double> u_x = deriv(s.u_hat, 1), u_xx = deriv(s.u_hat, 2);
    nl.evaluate(JetFields{state.psi, eta_x, eta_xx, state.v, u_x, u_xx}, h1, h2);
  }
  h1_hat = ws.forward(h1);
  h2_hat = ws.forward(h2);
  if (dealias) {
    ws.dealias(h1_hat);
    ws.dealias(h2_hat);
  }
}

SpectralState advance(const SpectralState& s, const std::vector<Complex>& h1_hat, const std::vector<Complex>& h2_hat,
                      const EvolutionSymbols& sym) {
  const double dt = sym.dt;
  const double th = sym.theta;
  SpectralState out;
  out.u_hat.resize(s.u_hat.size());
  out.eta_hat.resize(s.eta_hat.size());
  for (std::size_t m = 0; m < s.u_hat.size(); ++m) {
    const Complex w1 = sym.w1[m], w2 = sym.w2[m];
    const Complex nl1 = sym.l1[m] * h1_hat[m];
    const Complex nl2 = sym.l2[m] * h2_hat[m];
    const Complex u_new = ((1.0 + dt * dt * w1 * w2 * th * (1.0 - th)) * s.u_hat[m] + dt * w1 * s.eta_hat[m] +
                           dt * dt * w1 * th * nl2 + dt * nl1) /
                          sym.denominator[m];
    out.u_hat[m] = u_new;
    out.eta_hat[m] = s.eta_hat[m] + dt * th * w2 * u_new + dt * (1.0 - th) * w2 * s.u_hat[m] + dt * nl2;
  }
  return out;
}

WaveProfile to_physical(SpectralWorkspace& ws, const Grid& grid, const SpectralState& s) {
  return WaveProfile(grid, ws.inverse(s.eta_hat), ws.inverse(s.u_hat));
}

double reality_defect(const SpectralState& s, std::size_t n, double scale) {
  const std::size_t nyq = s.u_hat.size() - 1;
  const double d = std::max({std::abs(s.u_hat[0].imag()), std::abs(s.u_hat[nyq].imag()),
                             std::abs(s.eta_hat[0].imag()), std::abs(s.eta_hat[nyq].imag())}) /
                   static_cast<double>(n);
  return scale > 0.0 ? d / scale : d;
}

}  // namespace

void PropagationConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be finite and > 0");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ValidationError("t_final must be finite and >= 0");
  if (!(theta >= 0.0 && theta <= 1.0)) throw ValidationError("theta must lie in [0, 1]");
}

EvolutionSymbols build_symbols(const Grid& grid, const ModelParams& p, double dt, double theta) {
  const std::vector<double> k = wavenumbers(grid);
  const std::size_t nyq = k.size() - 1;
  EvolutionSymbols s;
  s.dt = dt;
  s.theta = theta;
  s.w1.resize(k.size());
  s.w2.resize(k.size());
  s.l1.resize(k.size());
  s.l2.resize(k.size());
  s.denominator.resize(k.size());
  for (std::size_t m = 0; m < k.size(); ++m) {
    const double k1 = k[m], k2 = k1 * k1, k3 = k2 * k1, k5 = k3 * k2;
    const double den1 = 1.0 + p.d() * k2 + p.d2() * k2 * k2;
    const double den2 = 1.0 + p.b() * k2 + p.b2() * k2 * k2;
    if (m == nyq) {
      s.w1[m] = s.w2[m] = s.l1[m] = s.l2[m] = 0.0;
    } else {
      s.w1[m] = Complex(0.0, (-k1 + p.c() * k3 - p.c2() * k5) / den1);
      s.w2[m] = Complex(0.0, (-k1 + p.a() * k3 - p.a2() * k5) / den2);
      s.l1[m] = Complex(0.0, k1 / den1);
      s.l2[m] = Complex(0.0, k1 / den2);
    }
    // W1 W2 is real: (i x)(i y) = -x y.
    const double w1w2 = -s.w1[m].imag() * s.w2[m].imag();
    s.denominator[m] = 1.0 - dt * dt * w1w2 * theta * theta;
    if (std::abs(s.denominator[m]) < 1e-12) throw StabilityConfigError(m, s.denominator[m]);
  }
  return s;
}

WaveProfile step(SpectralWorkspace& ws, const WaveProfile& state, const EvolutionSymbols& sym, const Nonlinearity& nl,
                 bool dealias) {
  if (!(ws.grid() == state.grid)) throw ValidationError("state grid does not match the spectral workspace");
  SpectralState s{ws.forward(state.v), ws.forward(state.psi)};
  std::vector<Complex> h1_hat, h2_hat;
  nonlinear_spectra(ws, state, s, nl, dealias, h1_hat, h2_hat);
  WaveProfile next = to_physical(ws, state.grid, advance(s, h1_hat, h2_hat, sym));
  if (!next.all_finite()) throw BlowUpError(1, "");
  return next;
}

PropagationResult propagate(const WaveProfile& initial, const ModelParams& params, const Nonlinearity& nl,
                            const PropagationConfig& cfg) {
  cfg.validate();
  if (!initial.all_finite()) throw ValidationError("initial state contains non-finite samples");
  const Grid& grid = initial.grid;
  SpectralWorkspace ws(grid);

  const double ratio = cfg.t_final / cfg.dt;
  const auto full_steps = static_cast<std::size_t>(std::floor(ratio + 1e-9));
  double partial = cfg.t_final - static_cast<double>(full_steps) * cfg.dt;
  if (partial <= 1e-9 * cfg.dt) partial = 0.0;

  const EvolutionSymbols sym = build_symbols(grid, params, cfg.dt, cfg.theta);

  PropagationResult result{initial, {}, {}};
  auto& diag = result.diagnostics;
  diag.partial_step = partial;
  diag.times.push_back(0.0);
  diag.max_norm.push_back(initial.max_norm());
  result.snapshots.push_back({0.0, initial});

  SpectralState s{ws.forward(initial.v), ws.forward(initial.psi)};
  WaveProfile state = initial;
  std::vector<Complex> h1_hat, h2_hat;

  auto do_step = [&](const EvolutionSymbols& symbols, std::size_t index, double t) {
    nonlinear_spectra(ws, state, s, nl, cfg.dealias, h1_hat, h2_hat);
    s = advance(s, h1_hat, h2_hat, symbols);
    state = to_physical(ws, grid, s);
    const double norm = state.max_norm();
    if (!state.all_finite()) {
      throw BlowUpError(index, "t = " + std::to_string(t) + ", last finite max-norm " +
                                   std::to_string(diag.max_norm.back()));
    }
    diag.steps = index;
    diag.times.push_back(t);
    diag.max_norm.push_back(norm);
    diag.reality_defect = std::max(diag.reality_defect, reality_defect(s, grid.size(), norm));
  };

  for (std::size_t i = 1; i <= full_steps; ++i) {
    const double t = static_cast<double>(i) * cfg.dt;
    do_step(sym, i, t);
    if (cfg.snapshot_stride > 0 && i % cfg.snapshot_stride == 0 && i != full_steps) {
      result.snapshots.push_back({t, state});
    }
  }
  if (partial > 0.0) {
    const EvolutionSymbols tail = build_symbols(grid, params, partial, cfg.theta);
    do_step(tail, full_steps + 1, cfg.t_final);
  }
  if (full_steps > 0 || partial > 0.0) result.snapshots.push_back({cfg.t_final, state});
  result.final_state = std::move(state);
  return result;
}

TranslationErrors verify_translation(const WaveProfile& computed, const WaveProfile& reference, double omega, double t) {
  if (!(computed.grid == reference.grid)) throw ValidationError("computed and reference grids differ");
  SpectralWorkspace ws(reference.grid);
  const double shift = omega * t;
  // no shift means a plain comparison, without a transform round trip
  const std::vector<double> u_ref = shift == 0.0 ? reference.v : ws.translate(reference.v, shift);
  const std::vector<double> eta_ref = shift == 0.0 ? reference.psi : ws.translate(reference.psi, shift);

  auto rel = [](double err, double scale) { return scale > 0.0 ? err / scale : err; };
  auto l2 = [&](std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double d = b.empty() ? a[j] : a[j] - b[j];
      sum += d * d;
    }
    return std::sqrt(reference.grid.spacing() * sum);
  };
  auto inf = [](std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
  };

  TranslationErrors e;
  e.inf_u = rel(inf(computed.v, u_ref), max_abs(u_ref));
  e.inf_eta = rel(inf(computed.psi, eta_ref), max_abs(eta_ref));
  e.l2_u = rel(l2(computed.v, u_ref), l2(u_ref, {}));
  e.l2_eta = rel(l2(computed.psi, eta_ref), l2(eta_ref, {}));
  return e;
}

}  // namespace solitwave
