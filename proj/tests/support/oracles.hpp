#pragma once

// Independent reference computations used only by tests. None of these call
// into the library's numerical kernels.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "solitwave/model.hpp"

namespace oracle {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

// O(N^2) DFT in long double, half spectrum, unnormalized.
inline std::vector<cplx> brute_dft(const std::vector<double>& f) {
  const std::size_t n = f.size();
  std::vector<cplx> out(n / 2 + 1);
  for (std::size_t m = 0; m <= n / 2; ++m) {
    lcplx acc = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      const long double a = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>(m * j % n) /
                            static_cast<long double>(n);
      acc += static_cast<long double>(f[j]) * lcplx(std::cos(a), std::sin(a));
    }
    out[m] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  return out;
}

// Full-spectrum coefficient (index -N/2+1 .. N/2) from a half spectrum.
inline cplx full_coeff(const std::vector<cplx>& half, long m) {
  return m >= 0 ? half[static_cast<std::size_t>(m)] : std::conj(half[static_cast<std::size_t>(-m)]);
}

// The four traveling-wave symbol polynomials, Horner form in s = k^2.
struct Symbol {
  double d11, d12, d21, d22;
  double det() const { return d11 * d22 - d12 * d21; }
};

inline Symbol symbol(const solitwave::ModelParams& p, double k) {
  const double s = k * k;
  return {-p.omega() * ((p.d2() * s + p.d()) * s + 1.0), (p.c2() * s - p.c()) * s + 1.0,
          (p.a2() * s - p.a()) * s + 1.0, -p.omega() * ((p.b2() * s + p.b()) * s + 1.0)};
}

// Imaginary parts of the evolution coupling symbols: W1 = i w1, W2 = i w2.
inline double w1_imag(const solitwave::ModelParams& p, double k) {
  const double s = k * k;
  return k * ((-p.c2() * s + p.c()) * s - 1.0) / ((p.d2() * s + p.d()) * s + 1.0);
}
inline double w2_imag(const solitwave::ModelParams& p, double k) {
  const double s = k * k;
  return k * ((-p.a2() * s + p.a()) * s - 1.0) / ((p.b2() * s + p.b()) * s + 1.0);
}

// One linear theta step of the per-mode system u' = W1 eta, eta' = W2 u,
// written as the 2x2 implicit system and solved by Cramer's rule.
inline void theta_mode_step(cplx& u, cplx& eta, cplx w1, cplx w2, double dt, double theta) {
  const cplx a11 = 1.0, a12 = -dt * theta * w1, a21 = -dt * theta * w2, a22 = 1.0;
  const cplx b1 = u + dt * (1.0 - theta) * w1 * eta;
  const cplx b2 = eta + dt * (1.0 - theta) * w2 * u;
  const cplx det = a11 * a22 - a12 * a21;
  u = (b1 * a22 - a12 * b2) / det;
  eta = (a11 * b2 - a21 * b1) / det;
}

// Value and derivatives up to order 4 of a cosine series at x, by direct sum.
inline double cosine_sum(const std::vector<double>& c, double l, double x, int order) {
  long double acc = 0.0L;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const long double kap = static_cast<long double>(k) * std::numbers::pi_v<long double> / l;
    const long double arg = kap * x;
    long double term = 0.0L;
    switch (order) {
      case 0: term = std::cos(arg); break;
      case 1: term = -kap * std::sin(arg); break;
      case 2: term = -kap * kap * std::cos(arg); break;
      case 3: term = kap * kap * kap * std::sin(arg); break;
      default: term = kap * kap * kap * kap * std::cos(arg); break;
    }
    acc += c[k] * term;
  }
  return static_cast<double>(acc);
}

// Smooth periodic random field: a few low Fourier modes plus a localized bump.
inline std::vector<double> random_smooth_field(const solitwave::Grid& g, std::mt19937_64& rng, int max_mode = 6) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<double> f(g.size(), 0.0);
  for (int m = 1; m <= max_mode; ++m) {
    const double a = amp(rng) / m, ph = phase(rng);
    for (std::size_t j = 0; j < g.size(); ++j) {
      f[j] += a * std::cos(2.0 * std::numbers::pi * m * g.x(j) / g.length() + ph);
    }
  }
  const double c0 = amp(rng);
  for (std::size_t j = 0; j < g.size(); ++j) f[j] += c0 * 0.5;
  return f;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
