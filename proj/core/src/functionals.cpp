#include "solitwave/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "solitwave/dispersion.hpp"
#include "solitwave/errors.hpp"

namespace solitwave {

namespace {

void require_same_grid(const SpectralWorkspace& ws, const WaveProfile& w) {
  if (!(ws.grid() == w.grid)) throw ValidationError("profile grid does not match the spectral workspace");
}

template <class F>
double quadrature(const SpectralWorkspace& ws, std::size_t n, F&& integrand) {
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) sum += integrand(j);
  return ws.grid().spacing() * sum;
}

}  // namespace

JetFields ProfileDerivatives::jets() const { return JetFields{psi, psi_x, psi_xx, v, v_x, v_xx}; }

ProfileDerivatives profile_derivatives(SpectralWorkspace& ws, const WaveProfile& w) {
  require_same_grid(ws, w);
  ProfileDerivatives d;
  d.psi = w.psi;
  d.v = w.v;
  const int orders[] = {1, 2};
  std::vector<double> out[2];
  ws.derivatives(w.psi, orders, out);
  d.psi_x = std::move(out[0]);
  d.psi_xx = std::move(out[1]);
  ws.derivatives(w.v, orders, out);
  d.v_x = std::move(out[0]);
  d.v_xx = std::move(out[1]);
  return d;
}

double eval_I1(SpectralWorkspace& ws, const WaveProfile& w, const ModelParams& p) {
  const ProfileDerivatives d = profile_derivatives(ws, w);
  return quadrature(ws, ws.size(), [&](std::size_t j) {
    return d.psi[j] * d.psi[j] - p.c() * d.psi_x[j] * d.psi_x[j] + p.c2() * d.psi_xx[j] * d.psi_xx[j] +
           d.v[j] * d.v[j] - p.a() * d.v_x[j] * d.v_x[j] + p.a2() * d.v_xx[j] * d.v_xx[j];
  });
}

double eval_I2(SpectralWorkspace& ws, const WaveProfile& w, const ModelParams& p) {
  const ProfileDerivatives d = profile_derivatives(ws, w);
  return quadrature(ws, ws.size(), [&](std::size_t j) {
    return d.psi[j] * d.v[j] + p.b() * d.psi_x[j] * d.v_x[j] + p.b2() * d.psi_xx[j] * d.v_xx[j];
  });
}

double eval_K(SpectralWorkspace& ws, const WaveProfile& w, const Nonlinearity& nl) {
  if (!nl.has_potential()) nl.potential(Jet{});  // throws the descriptive error
  const ProfileDerivatives d = profile_derivatives(ws, w);
  const JetFields jets = d.jets();
  return quadrature(ws, ws.size(), [&](std::size_t j) { return nl.potential(jets.at(j)); });
}

double eval_N(SpectralWorkspace& ws, const WaveProfile& w, const Nonlinearity& nl) {
  if (!nl.has_potential_gradient()) nl.potential_gradient(Jet{});
  const ProfileDerivatives d = profile_derivatives(ws, w);
  const JetFields jets = d.jets();
  return quadrature(ws, ws.size(), [&](std::size_t j) { return nl.euler_contraction(jets.at(j)); });
}

ResidualFields residual_fields(SpectralWorkspace& ws, const WaveProfile& w, const ModelParams& p,
                               const Nonlinearity& nl) {
  const ProfileDerivatives d = profile_derivatives(ws, w);
  const std::size_t n = ws.size();
  std::vector<double> h1(n), h2(n);
  nl.evaluate(d.jets(), h1, h2);

  const std::vector<Complex> psi_hat = ws.forward(w.psi);
  const std::vector<Complex> v_hat = ws.forward(w.v);
  const std::vector<Complex> h1_hat = ws.forward(h1);
  const std::vector<Complex> h2_hat = ws.forward(h2);
  std::vector<Complex> r1_hat(ws.n_modes()), r2_hat(ws.n_modes());
  for (std::size_t m = 0; m < ws.n_modes(); ++m) {
    const DispersionEntries e = dispersion_entries(p, ws.k()[m]);
    r1_hat[m] = e.d11 * v_hat[m] + e.d12 * psi_hat[m] - h1_hat[m];
    r2_hat[m] = e.d21 * v_hat[m] + e.d22 * psi_hat[m] - h2_hat[m];
  }
  return ResidualFields{ws.inverse(r1_hat), ws.inverse(r2_hat)};
}

FunctionalReport eval_all(SpectralWorkspace& ws, const WaveProfile& w, const ModelParams& p,
                          const Nonlinearity& nl) {
  FunctionalReport r;
  r.i1 = eval_I1(ws, w, p);
  r.i2 = eval_I2(ws, w, p);
  r.i_omega = r.i1 - 2.0 * p.omega() * r.i2;
  r.k = eval_K(ws, w, nl);
  r.n = eval_N(ws, w, nl);
  r.p_omega = r.i_omega - r.n;
  r.j_omega = 0.5 * r.i_omega - r.k;

  const ResidualFields res = residual_fields(ws, w, p, nl);
  double inf = 0.0;
  for (std::size_t j = 0; j < ws.size(); ++j) inf = std::max({inf, std::abs(res.r1[j]), std::abs(res.r2[j])});
  r.residual_inf = inf;
  r.residual_l2 =
      std::sqrt(quadrature(ws, ws.size(), [&](std::size_t j) { return res.r1[j] * res.r1[j] + res.r2[j] * res.r2[j]; }));
  r.amplitude = w.max_norm();
  return r;
}

FunctionalReport eval_all(const WaveProfile& w, const ModelParams& params, const Nonlinearity& nl) {
  SpectralWorkspace ws(w.grid);
  return eval_all(ws, w, params, nl);
}

NormEquivalence norm_equivalence_constants(const ModelParams& p) {
  const double s = std::abs(p.omega());
  NormEquivalence ne;
  ne.m1 = std::min({1.0 - s, -p.c() - p.b() * s, -p.a() - p.b() * s, p.a2() - p.b2() * s, p.c2() - p.b2() * s});
  ne.m2 = std::max({1.0 + s, std::abs(p.c()) + p.b() * s, std::abs(p.a()) + p.b() * s, p.a2() + p.b2() * s,
                    p.c2() + p.b2() * s});
  ne.in_regime = check_velocity_in_regime(p);
  return ne;
}

double h2_norm_squared(SpectralWorkspace& ws, const WaveProfile& w) {
  const ProfileDerivatives d = profile_derivatives(ws, w);
  return quadrature(ws, ws.size(), [&](std::size_t j) {
    return d.psi[j] * d.psi[j] + d.v[j] * d.v[j] + d.psi_x[j] * d.psi_x[j] + d.v_x[j] * d.v_x[j] +
           d.psi_xx[j] * d.psi_xx[j] + d.v_xx[j] * d.v_xx[j];
  });
}

IOmegaDecomposition i_omega_decomposition(SpectralWorkspace& ws, const WaveProfile& w, const ModelParams& p) {
  const ProfileDerivatives d = profile_derivatives(ws, w);
  const double om = p.omega();
  const double ac = std::abs(p.a());
  const double cc = std::abs(p.c());
  const double sc = std::sqrt(cc);
  IOmegaDecomposition s;
  s.psi_minus_omega_v = quadrature(ws, ws.size(), [&](std::size_t j) {
    const double t = d.psi[j] - om * d.v[j];
    return t * t;
  });
  s.first_derivative_square = quadrature(ws, ws.size(), [&](std::size_t j) {
    const double t = sc * d.psi_x[j] - p.b() * om / sc * d.v_x[j];
    return t * t;
  });
  s.second_derivative_square = quadrature(ws, ws.size(), [&](std::size_t j) {
    const double t = d.psi_xx[j] - om * p.b2() / p.c2() * d.v_xx[j];
    return p.c2() * t * t;
  });
  s.v_remainder = (1.0 - om * om) * quadrature(ws, ws.size(), [&](std::size_t j) { return d.v[j] * d.v[j]; });
  s.v_x_remainder = (ac - p.b() * p.b() * om * om / cc) *
                    quadrature(ws, ws.size(), [&](std::size_t j) { return d.v_x[j] * d.v_x[j]; });
  s.v_xx_remainder = (p.a2() - om * om * p.b2() * p.b2() / p.c2()) *
                     quadrature(ws, ws.size(), [&](std::size_t j) { return d.v_xx[j] * d.v_xx[j]; });
  return s;
}

}  // namespace solitwave
