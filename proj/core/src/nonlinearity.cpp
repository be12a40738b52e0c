#include "solitwave/nonlinearity.hpp"

#include <algorithm>
#include <cmath>

#include "solitwave/errors.hpp"

namespace solitwave {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double& slot(Jet& s, std::size_t i) {
  switch (i) {
    case 0: return s.eta;
    case 1: return s.eta_x;
    case 2: return s.eta_xx;
    case 3: return s.u;
    case 4: return s.u_x;
    default: return s.u_xx;
  }
}

// Central-difference gradient of a point-wise map, used when a custom
// nonlinearity does not provide its own.
JetGradient fd_gradient(const std::function<double(const Jet&)>& f, const Jet& s) {
  JetGradient g{};
  for (std::size_t i = 0; i < 6; ++i) {
    Jet plus = s;
    Jet minus = s;
    const double h = 1e-6 * std::max(1.0, std::abs(slot(plus, i)));
    slot(plus, i) += h;
    slot(minus, i) -= h;
    g[i] = (f(plus) - f(minus)) / (2.0 * h);
  }
  return g;
}

}  // namespace

Jet JetFields::at(std::size_t j) const {
  auto get = [j](std::span<const double> a) { return a.empty() ? 0.0 : a[j]; };
  return Jet{get(eta), get(eta_x), get(eta_xx), get(u), get(u_x), get(u_xx)};
}

Nonlinearity::Nonlinearity(Variant v) : v_(std::move(v)) {
  if (const auto* hp = std::get_if<HomogeneousPower>(&v_); hp && hp->p < 1) {
    throw ValidationError("homogeneous exponent p must be a positive integer");
  }
  if (const auto* c = std::get_if<CustomNonlinearity>(&v_); c && (!c->h1 || !c->h2)) {
    throw ValidationError("custom nonlinearity must define both h1 and h2");
  }
}

Nonlinearity Nonlinearity::homogeneous(int p) { return Nonlinearity(HomogeneousPower{p}); }
Nonlinearity Nonlinearity::quartic() { return Nonlinearity(QuarticVariational{}); }

std::string Nonlinearity::name() const {
  return std::visit(Overloaded{
                        [](const HomogeneousPower& hp) { return "homogeneous(p=" + std::to_string(hp.p) + ")"; },
                        [](const QuarticVariational&) { return std::string("quartic"); },
                        [](const CustomNonlinearity& c) { return c.name; },
                    },
                    v_);
}

std::optional<int> Nonlinearity::homogeneity_exponent() const {
  if (const auto* hp = std::get_if<HomogeneousPower>(&v_)) return hp->p;
  return std::nullopt;
}

int Nonlinearity::max_derivative_order() const {
  return std::holds_alternative<HomogeneousPower>(v_) ? 0 : 2;
}

bool Nonlinearity::has_potential() const {
  if (const auto* c = std::get_if<CustomNonlinearity>(&v_)) return static_cast<bool>(c->potential);
  return true;
}

bool Nonlinearity::has_potential_gradient() const {
  if (const auto* c = std::get_if<CustomNonlinearity>(&v_)) return static_cast<bool>(c->potential_gradient);
  return true;
}

double Nonlinearity::h1(const Jet& s) const {
  return std::visit(Overloaded{
                        [&](const HomogeneousPower& hp) { return ipow(s.u, hp.p + 1); },
                        [&](const QuarticVariational&) {
                          return s.eta * s.eta * s.eta - s.eta_x * s.eta_x - 2.0 * s.eta_xx * s.eta;
                        },
                        [&](const CustomNonlinearity& c) { return c.h1(s); },
                    },
                    v_);
}

double Nonlinearity::h2(const Jet& s) const {
  return std::visit(Overloaded{
                        [&](const HomogeneousPower& hp) { return ipow(s.eta, hp.p + 1); },
                        [&](const QuarticVariational&) {
                          return s.u * s.u * s.u - s.u_x * s.u_x - 2.0 * s.u_xx * s.u;
                        },
                        [&](const CustomNonlinearity& c) { return c.h2(s); },
                    },
                    v_);
}

JetGradient Nonlinearity::h1_gradient(const Jet& s) const {
  return std::visit(Overloaded{
                        [&](const HomogeneousPower& hp) {
                          return JetGradient{0, 0, 0, (hp.p + 1) * ipow(s.u, hp.p), 0, 0};
                        },
                        [&](const QuarticVariational&) {
                          return JetGradient{3.0 * s.eta * s.eta - 2.0 * s.eta_xx, -2.0 * s.eta_x,
                                             -2.0 * s.eta, 0, 0, 0};
                        },
                        [&](const CustomNonlinearity& c) {
                          return c.h1_gradient ? c.h1_gradient(s) : fd_gradient(c.h1, s);
                        },
                    },
                    v_);
}

JetGradient Nonlinearity::h2_gradient(const Jet& s) const {
  return std::visit(Overloaded{
                        [&](const HomogeneousPower& hp) {
                          return JetGradient{(hp.p + 1) * ipow(s.eta, hp.p), 0, 0, 0, 0, 0};
                        },
                        [&](const QuarticVariational&) {
                          return JetGradient{0, 0, 0, 3.0 * s.u * s.u - 2.0 * s.u_xx, -2.0 * s.u_x,
                                             -2.0 * s.u};
                        },
                        [&](const CustomNonlinearity& c) {
                          return c.h2_gradient ? c.h2_gradient(s) : fd_gradient(c.h2, s);
                        },
                    },
                    v_);
}

double Nonlinearity::potential(const Jet& s) const {
  return std::visit(Overloaded{
                        [&](const HomogeneousPower& hp) {
                          return (ipow(s.eta, hp.p + 2) + ipow(s.u, hp.p + 2)) / (hp.p + 2);
                        },
                        [&](const QuarticVariational&) {
                          return 0.25 * ipow(s.u, 4) + s.u * s.u_x * s.u_x + 0.25 * ipow(s.eta, 4) +
                                 s.eta * s.eta_x * s.eta_x;
                        },
                        [&](const CustomNonlinearity& c) {
                          if (!c.potential) {
                            throw UnsupportedFunctionalError("nonlinearity '" + c.name +
                                                             "' does not supply a potential F");
                          }
                          return c.potential(s);
                        },
                    },
                    v_);
}

PotentialGradient Nonlinearity::potential_gradient(const Jet& s) const {
  return std::visit(Overloaded{
                        [&](const HomogeneousPower& hp) {
                          return PotentialGradient{ipow(s.eta, hp.p + 1), 0, ipow(s.u, hp.p + 1), 0};
                        },
                        [&](const QuarticVariational&) {
                          return PotentialGradient{ipow(s.eta, 3) + s.eta_x * s.eta_x, 2.0 * s.eta * s.eta_x,
                                                   ipow(s.u, 3) + s.u_x * s.u_x, 2.0 * s.u * s.u_x};
                        },
                        [&](const CustomNonlinearity& c) {
                          if (!c.potential_gradient) {
                            throw UnsupportedFunctionalError("nonlinearity '" + c.name +
                                                             "' does not supply grad F");
                          }
                          return c.potential_gradient(s);
                        },
                    },
                    v_);
}

double Nonlinearity::euler_contraction(const Jet& s) const {
  const PotentialGradient g = potential_gradient(s);
  return s.eta * g[0] + s.eta_x * g[1] + s.u * g[2] + s.u_x * g[3];
}

void Nonlinearity::evaluate(const JetFields& f, std::span<double> h1_out, std::span<double> h2_out) const {
  const std::size_t n = h1_out.size();
  if (const auto* hp = std::get_if<HomogeneousPower>(&v_)) {
    const int q = hp->p + 1;
    for (std::size_t j = 0; j < n; ++j) {
      h1_out[j] = ipow(f.u[j], q);
      h2_out[j] = ipow(f.eta[j], q);
    }
    return;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const Jet s = f.at(j);
    h1_out[j] = h1(s);
    h2_out[j] = h2(s);
  }
}

}  // namespace solitwave
