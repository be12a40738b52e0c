#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>

namespace solitwave {

/// Point values of both fields and their first two derivatives.
struct Jet {
  double eta = 0.0;
  double eta_x = 0.0;
  double eta_xx = 0.0;
  double u = 0.0;
  double u_x = 0.0;
  double u_xx = 0.0;
};

/// Partial derivatives of H with respect to the six Jet slots, in Jet order.
using JetGradient = std::array<double, 6>;

/// Partial derivatives of F with respect to (eta, eta_x, u, u_x).
using PotentialGradient = std::array<double, 4>;

/// H1 = u^(p+1), H2 = eta^(p+1).
struct HomogeneousPower {
  int p = 1;
};

/// F = u^4/4 + u u_x^2 + eta^4/4 + eta eta_x^2 with
/// H1 = eta^3 - eta_x^2 - 2 eta_xx eta and H2 = u^3 - u_x^2 - 2 u_xx u.
struct QuarticVariational {};

/// User-supplied point-wise maps. Gradients are optional; when absent they are
/// approximated by central differences. K and N need `potential` and
/// `potential_gradient` respectively.
struct CustomNonlinearity {
  std::string name = "custom";
  std::function<double(const Jet&)> h1;
  std::function<double(const Jet&)> h2;
  std::function<JetGradient(const Jet&)> h1_gradient;
  std::function<JetGradient(const Jet&)> h2_gradient;
  std::function<double(const Jet&)> potential;
  std::function<PotentialGradient(const Jet&)> potential_gradient;
};

/// Bulk point-wise field arrays. Derivative spans may be empty when the
/// nonlinearity does not read them (see Nonlinearity::max_derivative_order).
struct JetFields {
  std::span<const double> eta, eta_x, eta_xx;
  std::span<const double> u, u_x, u_xx;

  Jet at(std::size_t j) const;
};

class Nonlinearity {
 public:
  using Variant = std::variant<HomogeneousPower, QuarticVariational, CustomNonlinearity>;

  explicit Nonlinearity(Variant v);

  static Nonlinearity homogeneous(int p);
  static Nonlinearity quartic();

  const Variant& variant() const noexcept { return v_; }
  std::string name() const;

  /// p for HomogeneousPower, nothing otherwise.
  std::optional<int> homogeneity_exponent() const;

  /// Highest spatial derivative the H maps read (0, 1 or 2).
  int max_derivative_order() const;

  bool has_potential() const;
  bool has_potential_gradient() const;

  double h1(const Jet& s) const;
  double h2(const Jet& s) const;
  JetGradient h1_gradient(const Jet& s) const;
  JetGradient h2_gradient(const Jet& s) const;

  /// F(eta, eta_x, u, u_x). Throws UnsupportedFunctionalError if unavailable.
  double potential(const Jet& s) const;
  PotentialGradient potential_gradient(const Jet& s) const;

  /// (eta, eta_x, u, u_x) . grad F
  double euler_contraction(const Jet& s) const;

  /// Fills h1_out and h2_out point-wise.
  void evaluate(const JetFields& fields, std::span<double> h1_out, std::span<double> h2_out) const;

 private:
  Variant v_;
};

}  // namespace solitwave
