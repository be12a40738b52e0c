#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "solitwave/model.hpp"

namespace solitwave {

using Complex = std::complex<double>;

/// k_m = 2 pi m / L for m = 0..N/2.
std::vector<double> wavenumbers(const Grid& grid);

/// Multiplicity of half-spectrum mode m in the full spectrum: 1 for m = 0 and
/// m = N/2, 2 otherwise.
inline double hermitian_weight(std::size_t m, std::size_t n) noexcept {
  return (m == 0 || 2 * m == n) ? 1.0 : 2.0;
}

/// Real-input FFT workspace bound to one grid.
///
/// Forward transforms are unnormalized, inverse transforms carry 1/N. Odd-order
/// symbols are zeroed at the Nyquist mode so that results stay real.
/// A workspace is not thread-safe; give each thread its own.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const Grid& grid);
  ~SpectralWorkspace();
  SpectralWorkspace(SpectralWorkspace&&) noexcept;
  SpectralWorkspace& operator=(SpectralWorkspace&&) noexcept;
  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<double>& k() const noexcept { return k_; }
  std::size_t size() const noexcept { return grid_.size(); }
  std::size_t n_modes() const noexcept { return grid_.n_modes(); }

  void forward(std::span<const double> field, std::span<Complex> spectrum);
  void inverse(std::span<const Complex> spectrum, std::span<double> field);
  std::vector<Complex> forward(std::span<const double> field);
  std::vector<double> inverse(std::span<const Complex> spectrum);

  /// (i k)^order applied in spectrum space; order in 1..5.
  std::vector<double> derivative(std::span<const double> field, int order);
  void derivative(std::span<const double> field, int order, std::span<double> out);

  /// Several derivatives of one field from a single forward transform.
  /// out[i] receives the derivative of order orders[i].
  void derivatives(std::span<const double> field, std::span<const int> orders,
                   std::span<std::vector<double>> out);

  /// f(x - s), exact for band-limited periodic fields.
  std::vector<double> translate(std::span<const double> field, double shift);

  /// Rectangle rule h * sum f_j.
  double integrate(std::span<const double> field) const;

  /// Zeroes modes with m > N/3 (2/3 rule).
  void dealias(std::span<Complex> spectrum) const;

  /// Integral of f^2 computed from the half spectrum of f (Parseval).
  double spectral_energy(std::span<const Complex> spectrum) const;

 private:
  struct Plans;
  Grid grid_;
  std::vector<double> k_;
  std::unique_ptr<Plans> plans_;
};

/// (i k)^order with the Nyquist convention used throughout the library.
Complex derivative_symbol(double k, int order, bool nyquist);

}  // namespace solitwave
