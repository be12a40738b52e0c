#include "solitwave/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "solitwave/errors.hpp"

namespace solitwave {

namespace {

// The FFTW planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw ValidationError(std::string(what) + ": expected " + std::to_string(want) + " entries, got " +
                          std::to_string(got));
  }
}

}  // namespace

std::vector<double> wavenumbers(const Grid& grid) {
  std::vector<double> k(grid.n_modes());
  const double base = 2.0 * std::numbers::pi / grid.length();
  for (std::size_t m = 0; m < k.size(); ++m) k[m] = base * static_cast<double>(m);
  return k;
}

Complex derivative_symbol(double k, int order, bool nyquist) {
  if (order == 0) return 1.0;
  if (nyquist && order % 2 == 1) return 0.0;
  // i^order * k^order without complex pow
  double mag = 1.0;
  for (int i = 0; i < order; ++i) mag *= k;
  switch (order % 4) {
    case 0: return {mag, 0.0};
    case 1: return {0.0, mag};
    case 2: return {-mag, 0.0};
    default: return {0.0, -mag};
  }
}

struct SpectralWorkspace::Plans {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  explicit Plans(std::size_t n) {
    std::lock_guard lock(planner_mutex());
    real = fftw_alloc_real(n);
    spec = fftw_alloc_complex(n / 2 + 1);
    const int ni = static_cast<int>(n);
    r2c = fftw_plan_dft_r2c_1d(ni, real, spec, FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r_1d(ni, spec, real, FFTW_ESTIMATE);
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
    fftw_free(real);
    fftw_free(spec);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

SpectralWorkspace::SpectralWorkspace(const Grid& grid)
    : grid_(grid), k_(wavenumbers(grid)), plans_(std::make_unique<Plans>(grid.size())) {}

SpectralWorkspace::~SpectralWorkspace() = default;
SpectralWorkspace::SpectralWorkspace(SpectralWorkspace&&) noexcept = default;
SpectralWorkspace& SpectralWorkspace::operator=(SpectralWorkspace&&) noexcept = default;

void SpectralWorkspace::forward(std::span<const double> field, std::span<Complex> spectrum) {
  check_size(field.size(), size(), "forward transform input");
  check_size(spectrum.size(), n_modes(), "forward transform output");
  std::copy(field.begin(), field.end(), plans_->real);
  fftw_execute(plans_->r2c);
  const auto* src = reinterpret_cast<const Complex*>(plans_->spec);
  std::copy(src, src + n_modes(), spectrum.begin());
}

void SpectralWorkspace::inverse(std::span<const Complex> spectrum, std::span<double> field) {
  check_size(spectrum.size(), n_modes(), "inverse transform input");
  check_size(field.size(), size(), "inverse transform output");
  auto* dst = reinterpret_cast<Complex*>(plans_->spec);
  std::copy(spectrum.begin(), spectrum.end(), dst);
  fftw_execute(plans_->c2r);
  const double scale = 1.0 / static_cast<double>(size());
  for (std::size_t j = 0; j < size(); ++j) field[j] = plans_->real[j] * scale;
}

std::vector<Complex> SpectralWorkspace::forward(std::span<const double> field) {
  std::vector<Complex> s(n_modes());
  forward(field, s);
  return s;
}

std::vector<double> SpectralWorkspace::inverse(std::span<const Complex> spectrum) {
  std::vector<double> f(size());
  inverse(spectrum, f);
  return f;
}

std::vector<double> SpectralWorkspace::derivative(std::span<const double> field, int order) {
  std::vector<double> out(size());
  derivative(field, order, out);
  return out;
}

void SpectralWorkspace::derivative(std::span<const double> field, int order, std::span<double> out) {
  if (order < 1 || order > 5) throw ValidationError("derivative order must be in 1..5");
  std::vector<Complex> s = forward(field);
  const std::size_t nyq = n_modes() - 1;
  for (std::size_t m = 0; m < s.size(); ++m) s[m] *= derivative_symbol(k_[m], order, m == nyq);
  inverse(s, out);
}

void SpectralWorkspace::derivatives(std::span<const double> field, std::span<const int> orders,
                                    std::span<std::vector<double>> out) {
  check_size(out.size(), orders.size(), "derivative outputs");
  const std::vector<Complex> s = forward(field);
  std::vector<Complex> t(s.size());
  const std::size_t nyq = n_modes() - 1;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const int order = orders[i];
    if (order < 0 || order > 5) throw ValidationError("derivative order must be in 0..5");
    for (std::size_t m = 0; m < s.size(); ++m) t[m] = s[m] * derivative_symbol(k_[m], order, m == nyq);
    out[i].resize(size());
    inverse(t, out[i]);
  }
}

std::vector<double> SpectralWorkspace::translate(std::span<const double> field, double shift) {
  std::vector<Complex> s = forward(field);
  for (std::size_t m = 0; m < s.size(); ++m) s[m] *= std::polar(1.0, -k_[m] * shift);
  return inverse(s);
}

double SpectralWorkspace::integrate(std::span<const double> field) const {
  check_size(field.size(), size(), "integrand");
  double sum = 0.0;
  for (double f : field) sum += f;
  return grid_.spacing() * sum;
}

void SpectralWorkspace::dealias(std::span<Complex> spectrum) const {
  const std::size_t cutoff = size() / 3;
  for (std::size_t m = cutoff + 1; m < spectrum.size(); ++m) spectrum[m] = 0.0;
}

double SpectralWorkspace::spectral_energy(std::span<const Complex> spectrum) const {
  check_size(spectrum.size(), n_modes(), "spectrum");
  double sum = 0.0;
  for (std::size_t m = 0; m < spectrum.size(); ++m) sum += hermitian_weight(m, size()) * std::norm(spectrum[m]);
  const double n = static_cast<double>(size());
  return grid_.length() * sum / (n * n);
}

}  // namespace solitwave
