#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "solitwave/errors.hpp"
#include "solitwave/petviashvili.hpp"
#include "solitwave/propagator.hpp"

using namespace solitwave;
using std::numbers::pi;

namespace {

const ModelParams kOctic({-2, 2, -2, 2, 20, 5, 20, 5}, 0.8, RegimeCheck::Theoretical);
const ModelParams kAsym({-1, 2, -2, 2, 1, 2, 3, 2}, 0.2);

Nonlinearity zero_nonlinearity() {
  CustomNonlinearity c;
  c.name = "zero";
  c.h1 = [](const Jet&) { return 0.0; };
  c.h2 = [](const Jet&) { return 0.0; };
  return Nonlinearity(c);
}

WaveProfile single_mode(const Grid& g, int m, double a, double b) {
  WaveProfile w(g);
  const double k = 2 * pi * m / g.length();
  for (std::size_t j = 0; j < g.size(); ++j) {
    w.v[j] = a * std::cos(k * g.x(j));
    w.psi[j] = b * std::sin(k * g.x(j));
  }
  return w;
}

}  // namespace

TEST_CASE("evolution symbols") {
  const Grid g(200.0, 4096);
  const EvolutionSymbols s = build_symbols(g, kOctic, 1e-3, 0.5);
  CHECK(s.w1[0] == Complex(0.0));
  CHECK(s.w2[0] == Complex(0.0));
  double max_real = 0.0;
  for (std::size_t m = 0; m < s.w1.size(); ++m) {
    max_real = std::max({max_real, std::abs(s.w1[m].real()), std::abs(s.w2[m].real())});
  }
  CHECK(max_real == 0.0);
  const double k1 = 2 * pi / 200.0;
  CHECK(oracle::rel(s.w1[1].imag(), oracle::w1_imag(kOctic, k1)) <= 1e-14);
  CHECK(oracle::rel(s.w2[1].imag(), oracle::w2_imag(kOctic, k1)) <= 1e-14);
  for (double d : s.denominator) CHECK(d >= 1.0);
}

TEST_CASE("propagation configuration validation") {
  PropagationConfig cfg;
  cfg.theta = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = {};
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("zero state stays zero") {
  const Grid g(50.0, 128);
  PropagationConfig cfg;
  cfg.dt = 0.01;
  cfg.t_final = 1.0;
  const PropagationResult r = propagate(WaveProfile(g), kOctic, Nonlinearity::homogeneous(2), cfg);
  CHECK(r.final_state.max_norm() == 0.0);
  SpectralWorkspace ws(g);
  CHECK(step(ws, WaveProfile(g), build_symbols(g, kOctic, 0.01, 0.5), Nonlinearity::quartic()).max_norm() == 0.0);
}

TEST_CASE("t_final = 0 returns the initial state") {
  const Grid g(50.0, 128);
  const WaveProfile w = gaussian_initial(g, 25.0, 0.5, 0.7);
  PropagationConfig cfg;
  cfg.t_final = 0.0;
  const PropagationResult r = propagate(w, kOctic, Nonlinearity::homogeneous(2), cfg);
  CHECK(r.final_state.psi == w.psi);
  CHECK(r.final_state.v == w.v);
  CHECK(r.snapshots.size() == 1);
  CHECK(r.diagnostics.steps == 0);
}

TEST_CASE("linear steps follow the per-mode 2x2 recurrence") {
  const Grid g(20.0, 32);
  const int m = 3;
  const double k = 2 * pi * m / g.length();
  const double dt = 0.01;
  for (double theta : {0.0, 0.5, 1.0}) {
    const EvolutionSymbols sym = build_symbols(g, kAsym, dt, theta);
    SpectralWorkspace ws(g);
    WaveProfile state = single_mode(g, m, 0.4, -0.25);
    auto u0 = ws.forward(state.v), e0 = ws.forward(state.psi);
    std::complex<double> u = u0[m], eta = e0[m];
    const std::complex<double> w1(0.0, oracle::w1_imag(kAsym, k)), w2(0.0, oracle::w2_imag(kAsym, k));
    const Nonlinearity zero = zero_nonlinearity();
    for (int n = 0; n < 500; ++n) {
      state = step(ws, state, sym, zero);
      oracle::theta_mode_step(u, eta, w1, w2, dt, theta);
    }
    const auto uh = ws.forward(state.v), eh = ws.forward(state.psi);
    CHECK(std::abs(uh[m] - u) <= 1e-12 * std::abs(u0[m]));
    CHECK(std::abs(eh[m] - eta) <= 1e-12 * std::abs(u0[m]));
  }
}

TEST_CASE("theta = 0 is explicit Euler") {
  const Grid g(30.0, 64);
  std::mt19937_64 rng(3);
  const WaveProfile w(g, oracle::random_smooth_field(g, rng), oracle::random_smooth_field(g, rng));
  const double dt = 0.02;
  SpectralWorkspace ws(g);
  const WaveProfile next = step(ws, w, build_symbols(g, kOctic, dt, 0.0), Nonlinearity::homogeneous(1));

  std::vector<double> h1(g.size()), h2(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    h1[j] = w.v[j] * w.v[j];
    h2[j] = w.psi[j] * w.psi[j];
  }
  const auto uh = oracle::brute_dft(w.v), eh = oracle::brute_dft(w.psi);
  const auto a1 = oracle::brute_dft(h1), a2 = oracle::brute_dft(h2);
  const auto un = oracle::brute_dft(next.v), en = oracle::brute_dft(next.psi);
  for (std::size_t m = 1; m < g.size() / 2; ++m) {
    const double k = 2 * pi * m / g.length();
    const std::complex<double> w1(0.0, oracle::w1_imag(kOctic, k)), w2(0.0, oracle::w2_imag(kOctic, k));
    const std::complex<double> l1(0.0, k / (1 + kOctic.d() * k * k + kOctic.d2() * k * k * k * k));
    const std::complex<double> l2(0.0, k / (1 + kOctic.b() * k * k + kOctic.b2() * k * k * k * k));
    const auto u_expect = uh[m] + dt * w1 * eh[m] + dt * l1 * a1[m];
    const auto e_expect = eh[m] + dt * w2 * uh[m] + dt * l2 * a2[m];
    CHECK(std::abs(un[m] - u_expect) <= 1e-11 * (1 + std::abs(u_expect)));
    CHECK(std::abs(en[m] - e_expect) <= 1e-11 * (1 + std::abs(e_expect)));
  }
}

TEST_CASE("trapezoidal rule conserves the linear per-mode invariant") {
  const Grid g(20.0, 32);
  const double dt = 0.05;
  const EvolutionSymbols sym = build_symbols(g, kAsym, dt, 0.5);
  std::mt19937_64 rng(5);
  WaveProfile state(g, oracle::random_smooth_field(g, rng), oracle::random_smooth_field(g, rng));
  SpectralWorkspace ws(g);
  const Nonlinearity zero = zero_nonlinearity();
  auto invariant = [&](const WaveProfile& s) {
    const auto u = ws.forward(s.v), e = ws.forward(s.psi);
    std::vector<double> out;
    for (std::size_t m = 1; m < u.size() - 1; ++m) {
      out.push_back(sym.w2[m].imag() * std::norm(u[m]) + sym.w1[m].imag() * std::norm(e[m]));
    }
    return out;
  };
  const auto before = invariant(state);
  for (int n = 0; n < 10000; ++n) state = step(ws, state, sym, zero);
  const auto after = invariant(state);
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(std::abs(after[i] - before[i]) <= 1e-10 * std::max(1.0, std::abs(before[i])));
  }
}

TEST_CASE("partial final step") {
  const Grid g(50.0, 128);
  const WaveProfile w = gaussian_initial(g, 25.0, 0.5, 0.5);
  PropagationConfig cfg;
  cfg.dt = 0.01;
  cfg.t_final = 0.025;
  const PropagationResult r = propagate(w, kOctic, Nonlinearity::homogeneous(2), cfg);
  CHECK(r.diagnostics.steps == 3);
  CHECK(r.diagnostics.partial_step == doctest::Approx(0.005));
  CHECK(r.snapshots.back().t == 0.025);

  SpectralWorkspace ws(g);
  WaveProfile s = w;
  s = step(ws, s, build_symbols(g, kOctic, 0.01, 0.5), Nonlinearity::homogeneous(2));
  s = step(ws, s, build_symbols(g, kOctic, 0.01, 0.5), Nonlinearity::homogeneous(2));
  s = step(ws, s, build_symbols(g, kOctic, 0.005, 0.5), Nonlinearity::homogeneous(2));
  CHECK(oracle::max_abs_diff(s.psi, r.final_state.psi) <= 1e-15);
}

TEST_CASE("snapshots") {
  const Grid g(50.0, 64);
  PropagationConfig cfg;
  cfg.dt = 0.1;
  cfg.t_final = 1.0;
  cfg.snapshot_stride = 3;
  const PropagationResult r = propagate(gaussian_initial(g, 25.0, 0.5, 0.5), kOctic, Nonlinearity::homogeneous(1), cfg);
  std::vector<double> times;
  for (const auto& s : r.snapshots) times.push_back(s.t);
  REQUIRE(times.size() == 5);
  CHECK(times[0] == 0.0);
  CHECK(times[1] == doctest::Approx(0.3));
  CHECK(times[3] == doctest::Approx(0.9));
  CHECK(times[4] == 1.0);
  CHECK(r.diagnostics.max_norm.size() == 11);
  CHECK(r.diagnostics.reality_defect <= 1e-12);
}

TEST_CASE("blow-up is reported with the step index") {
  const Grid g(20.0, 64);
  PropagationConfig cfg;
  cfg.dt = 0.5;
  cfg.t_final = 1000.0;
  cfg.theta = 0.0;
  try {
    propagate(gaussian_initial(g, 10.0, 0.5, 3.0), kOctic, Nonlinearity::homogeneous(8), cfg);
    FAIL("expected blow-up");
  } catch (const BlowUpError& e) {
    CHECK(e.step() >= 1);
  }
}

TEST_CASE("translation check") {
  const Grid g(200.0, 512);
  const WaveProfile ref = gaussian_initial(g, 100.0, 0.5, 1.0);
  SpectralWorkspace ws(g);
  const WaveProfile moved(g, ws.translate(ref.psi, 8.0), ws.translate(ref.v, 8.0));
  const TranslationErrors e = verify_translation(moved, ref, 0.8, 10.0);
  for (double x : {e.inf_u, e.inf_eta, e.l2_u, e.l2_eta}) CHECK(x <= 1e-12);
  const TranslationErrors z = verify_translation(ref, ref, 0.8, 0.0);
  for (double x : {z.inf_u, z.inf_eta, z.l2_u, z.l2_eta}) CHECK(x == 0.0);
  const TranslationErrors miss = verify_translation(ref, ref, 0.8, 10.0);
  CHECK(miss.l2_u > 0.5);
}

TEST_CASE("short propagation of a computed solitary wave") {
  const Grid g(200.0, 4096);
  const Nonlinearity nl = Nonlinearity::homogeneous(8);
  const PetviashviliResult sol = petviashvili_solve(gaussian_initial(g, 100.0, 0.5, 1.0), kOctic, nl);
  REQUIRE(sol.report.converged);
  PropagationConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 1.0;
  const PropagationResult r = propagate(sol.profile, kOctic, nl, cfg);
  const TranslationErrors e = verify_translation(r.final_state, sol.profile, kOctic.omega(), cfg.t_final);
  CHECK(e.l2_u <= 1e-3);
  CHECK(e.l2_eta <= 1e-3);
}
