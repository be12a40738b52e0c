#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "solitwave/spectral.hpp"

using namespace solitwave;
using std::numbers::pi;

namespace {

std::vector<double> sample(const Grid& g, auto&& f) {
  std::vector<double> out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) out[j] = f(g.x(j));
  return out;
}

}  // namespace

TEST_CASE("wavenumbers") {
  const std::vector<double> k = wavenumbers(Grid(2.0 * pi, 8));
  REQUIRE(k.size() == 5);
  for (std::size_t m = 0; m < 5; ++m) CHECK(k[m] == doctest::Approx(static_cast<double>(m)).epsilon(1e-15));
  CHECK(wavenumbers(Grid(200.0, 4096))[1] == doctest::Approx(pi / 100.0).epsilon(1e-15));
  CHECK(wavenumbers(Grid(3.7, 64))[0] == 0.0);
}

TEST_CASE("forward transform matches a brute-force DFT") {
  const Grid g(7.0, 64);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<double> f(g.size());
  for (double& x : f) x = d(rng);
  SpectralWorkspace ws(g);
  const auto fast = ws.forward(f);
  const auto slow = oracle::brute_dft(f);
  for (std::size_t m = 0; m < fast.size(); ++m) CHECK(std::abs(fast[m] - slow[m]) < 1e-12);
  CHECK(fast[0].imag() == 0.0);
  CHECK(std::abs(fast.back().imag()) < 1e-13);

  const auto back = ws.inverse(fast);
  CHECK(oracle::max_abs_diff(back, f) <= 100 * 2.3e-16 * oracle::max_abs(f));
}

TEST_CASE("single-mode derivatives are exact") {
  const double L = 200.0;
  const Grid g(L, 256);
  SpectralWorkspace ws(g);
  const double k = 2 * pi / L;
  const auto s = sample(g, [&](double x) { return std::sin(k * x); });
  const auto d1 = ws.derivative(s, 1);
  CHECK(oracle::max_abs_diff(d1, sample(g, [&](double x) { return k * std::cos(k * x); })) <= 1e-12 * k);
  // higher orders amplify rounding in the top modes by k_max^order, so use a short grid
  const Grid h(2 * pi, 16);
  SpectralWorkspace wh(h);
  const double k3 = 3.0;
  const auto c3 = sample(h, [&](double x) { return std::cos(k3 * x); });
  for (int order = 1; order <= 5; ++order) {
    const auto d = wh.derivative(c3, order);
    const double scale = std::pow(k3, order);
    const auto exact = sample(h, [&](double x) {
      const double ph = k3 * x + order * pi / 2;
      return scale * std::cos(ph);
    });
    CHECK(oracle::max_abs_diff(d, exact) <= 1e-12 * scale);
  }
}

TEST_CASE("derivatives of constants vanish") {
  const Grid g(10.0, 32);
  SpectralWorkspace ws(g);
  const std::vector<double> c(g.size(), 3.25);
  for (int order = 1; order <= 5; ++order) CHECK(oracle::max_abs(ws.derivative(c, order)) < 1e-13);
}

TEST_CASE("derivative of a Gaussian") {
  const Grid g(200.0, 4096);
  SpectralWorkspace ws(g);
  const auto f = sample(g, [](double x) { return std::exp(-0.5 * (x - 100) * (x - 100)); });
  const auto exact = sample(g, [](double x) { return -(x - 100) * std::exp(-0.5 * (x - 100) * (x - 100)); });
  CHECK(oracle::max_abs_diff(ws.derivative(f, 1), exact) <= 1e-9);
}

TEST_CASE("first derivative applied twice equals the second derivative") {
  const Grid g(30.0, 128);
  SpectralWorkspace ws(g);
  std::mt19937_64 rng(5);
  const auto f = oracle::random_smooth_field(g, rng);
  const auto twice = ws.derivative(ws.derivative(f, 1), 1);
  const auto direct = ws.derivative(f, 2);
  CHECK(oracle::max_abs_diff(twice, direct) <= 1e-10 * oracle::max_abs(direct));
}

TEST_CASE("translation") {
  const double L = 50.0;
  const Grid g(L, 128);
  SpectralWorkspace ws(g);
  const auto s = sample(g, [&](double x) { return std::sin(2 * pi * x / L); });
  CHECK(oracle::max_abs_diff(ws.translate(s, 0.0), s) <= 1e-15);
  const auto shifted = sample(g, [&](double x) { return std::sin(2 * pi * (x - L / 4) / L); });
  CHECK(oracle::max_abs_diff(ws.translate(s, L / 4), shifted) <= 1e-12);
  CHECK(oracle::max_abs_diff(ws.translate(s, L), s) <= 1e-12);

  std::mt19937_64 rng(9);
  const auto f = oracle::random_smooth_field(g, rng);
  const auto a = ws.translate(ws.translate(f, 1.3), 4.45);
  const auto b = ws.translate(f, 5.75);
  CHECK(oracle::max_abs_diff(a, b) <= 1e-11);
}

TEST_CASE("periodic quadrature") {
  SpectralWorkspace ws(Grid(200.0, 64));
  CHECK(ws.integrate(std::vector<double>(64, 1.0)) == doctest::Approx(200.0).epsilon(1e-15));
  const Grid g(200.0, 64);
  CHECK(std::abs(ws.integrate(sample(g, [](double x) { return std::sin(2 * pi * x / 200.0); }))) < 1e-12);
  const Grid g2(2 * pi, 64);
  SpectralWorkspace ws2(g2);
  CHECK(ws2.integrate(sample(g2, [](double x) { return std::sin(x) * std::sin(x); })) ==
        doctest::Approx(pi).epsilon(1e-12));
}

TEST_CASE("Parseval identity") {
  const Grid g(40.0, 256);
  SpectralWorkspace ws(g);
  std::mt19937_64 rng(21);
  for (int t = 0; t < 5; ++t) {
    const auto f = oracle::random_smooth_field(g, rng);
    std::vector<double> f2(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) f2[j] = f[j] * f[j];
    CHECK(ws.spectral_energy(ws.forward(f)) == doctest::Approx(ws.integrate(f2)).epsilon(1e-10));
  }
}

TEST_CASE("dealiasing removes the upper third") {
  SpectralWorkspace ws(Grid(1.0, 64));
  std::vector<Complex> s(33, Complex(1.0, 1.0));
  ws.dealias(s);
  for (std::size_t m = 0; m <= 21; ++m) CHECK(s[m] != Complex(0.0));
  for (std::size_t m = 22; m < 33; ++m) CHECK(s[m] == Complex(0.0));
}
