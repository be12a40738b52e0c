#include "solitwave/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "solitwave/errors.hpp"
#include "solitwave/profile.hpp"

namespace solitwave {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw ValidationError(std::string("parameter '") + name + "' is not finite");
  }
}

void require_sign(double value, const char* name, bool positive) {
  const bool ok = positive ? value > 0.0 : value < 0.0;
  if (!ok) {
    throw ValidationError(std::string("parameter '") + name + "' must be " +
                          (positive ? "> 0" : "< 0") + ", got " + std::to_string(value));
  }
}

}  // namespace

ModelParams::ModelParams(const DispersionCoefficients& coeffs, double omega, RegimeCheck check)
    : coeffs_(coeffs), omega_(omega), check_(check) {
  const struct {
    double value;
    const char* name;
    bool positive;
  } fields[] = {
      {coeffs.a, "a", false},   {coeffs.b, "b", true},    {coeffs.c, "c", false},
      {coeffs.d, "d", true},    {coeffs.a2, "a2", true},  {coeffs.b2, "b2", true},
      {coeffs.c2, "c2", true},  {coeffs.d2, "d2", true},
  };
  for (const auto& f : fields) require_finite(f.value, f.name);
  require_finite(omega, "omega");
  for (const auto& f : fields) require_sign(f.value, f.name, f.positive);

  if (check == RegimeCheck::Theoretical && (coeffs.b != coeffs.d || coeffs.b2 != coeffs.d2)) {
    throw ValidationError("theoretical regime requires b == d and b2 == d2");
  }
}

ModelParams ModelParams::with_omega(double omega) const { return ModelParams(coeffs_, omega, check_); }

double admissible_velocity_bound(const ModelParams& p) {
  return std::min({1.0, -p.a() / p.b(), -p.c() / p.b(), p.a2() / p.b2(), p.c2() / p.b2()});
}

bool check_velocity_in_regime(const ModelParams& p) {
  const double speed = std::abs(p.omega());
  return speed > 0.0 && speed < admissible_velocity_bound(p);
}

Grid::Grid(double length, std::size_t n_points) : length_(length), n_(n_points) {
  if (!std::isfinite(length) || length <= 0.0) {
    throw ValidationError("grid length must be finite and positive");
  }
  if (n_points < 2 || (n_points & (n_points - 1)) != 0) {
    throw ValidationError("grid size must be a power of two >= 2, got " + std::to_string(n_points));
  }
}

std::vector<double> Grid::points() const {
  std::vector<double> xs(n_);
  for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
  return xs;
}

WaveProfile::WaveProfile(const Grid& g, std::vector<double> psi_samples, std::vector<double> v_samples)
    : grid(g), psi(std::move(psi_samples)), v(std::move(v_samples)) {
  if (psi.size() != g.size() || v.size() != g.size()) {
    throw ValidationError("profile sample count does not match the grid");
  }
}

double WaveProfile::max_norm() const {
  double m = 0.0;
  for (double x : psi) m = std::max(m, std::abs(x));
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool WaveProfile::all_finite() const {
  return std::all_of(psi.begin(), psi.end(), [](double x) { return std::isfinite(x); }) &&
         std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double GaussianPulse::operator()(double x) const {
  const double s = x - center;
  return amplitude * std::exp(-width * s * s);
}

WaveProfile gaussian_initial(const Grid& grid, double center, double width, double amplitude) {
  const GaussianPulse pulse{center, width, amplitude};
  return gaussian_initial(grid, pulse, pulse);
}

WaveProfile gaussian_initial(const Grid& grid, const GaussianPulse& psi, const GaussianPulse& v) {
  for (const auto* pulse : {&psi, &v}) {
    if (!(pulse->center >= 0.0 && pulse->center <= grid.length())) {
      throw ValidationError("Gaussian center must lie in [0, L]");
    }
    if (!std::isfinite(pulse->width) || !std::isfinite(pulse->amplitude)) {
      throw ValidationError("Gaussian width and amplitude must be finite");
    }
  }
  WaveProfile w(grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    w.psi[j] = psi(x);
    w.v[j] = v(x);
  }
  return w;
}

}  // namespace solitwave
