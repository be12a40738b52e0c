#pragma once

#include <cstddef>
#include <vector>

namespace solitwave {

/// The eight dispersion coefficients of the fifth-order Boussinesq system.
struct DispersionCoefficients {
  double a = 0.0;   // < 0
  double b = 0.0;   // > 0
  double c = 0.0;   // < 0
  double d = 0.0;   // > 0
  double a2 = 0.0;  // > 0
  double b2 = 0.0;  // > 0
  double c2 = 0.0;  // > 0
  double d2 = 0.0;  // > 0
};

enum class RegimeCheck {
  General,      // only sign constraints
  Theoretical,  // additionally b == d and b2 == d2
};

/// Dispersion coefficients plus wave velocity, validated on construction.
///
/// Throws ValidationError for non-finite values or sign violations. With
/// RegimeCheck::Theoretical the symmetric-coupling conditions b = d and
/// b2 = d2 are enforced as well.
class ModelParams {
 public:
  ModelParams(const DispersionCoefficients& coeffs, double omega,
              RegimeCheck check = RegimeCheck::General);

  const DispersionCoefficients& coeffs() const noexcept { return coeffs_; }
  double a() const noexcept { return coeffs_.a; }
  double b() const noexcept { return coeffs_.b; }
  double c() const noexcept { return coeffs_.c; }
  double d() const noexcept { return coeffs_.d; }
  double a2() const noexcept { return coeffs_.a2; }
  double b2() const noexcept { return coeffs_.b2; }
  double c2() const noexcept { return coeffs_.c2; }
  double d2() const noexcept { return coeffs_.d2; }
  double omega() const noexcept { return omega_; }
  RegimeCheck regime_check() const noexcept { return check_; }

  /// Same coefficients with a different velocity.
  ModelParams with_omega(double omega) const;

 private:
  DispersionCoefficients coeffs_;
  double omega_;
  RegimeCheck check_;
};

/// min{1, -a/b, -c/b, a2/b2, c2/b2}: the velocity bound of the existence theory.
double admissible_velocity_bound(const ModelParams& params);

/// True iff 0 < |omega| < admissible_velocity_bound(params).
bool check_velocity_in_regime(const ModelParams& params);

/// Periodic interval [0, L) sampled at N equispaced points, N a power of two.
class Grid {
 public:
  Grid(double length, std::size_t n_points);

  double length() const noexcept { return length_; }
  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return length_ / static_cast<double>(n_); }
  double x(std::size_t j) const noexcept { return static_cast<double>(j) * spacing(); }
  std::vector<double> points() const;

  /// Number of half-spectrum modes, N/2 + 1.
  std::size_t n_modes() const noexcept { return n_ / 2 + 1; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double length_;
  std::size_t n_;
};

}  // namespace solitwave
