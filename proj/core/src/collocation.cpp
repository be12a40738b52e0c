#include "solitwave/collocation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "solitwave/dispersion.hpp"
#include "solitwave/errors.hpp"

namespace solitwave {

namespace {

void require_even(std::size_t n) {
  if (n < 2 || n % 2 != 0) throw ValidationError("collocation requires an even N >= 2");
}

void require_length(double l) {
  if (!(l > 0.0) || !std::isfinite(l)) throw ValidationError("half length l must be finite and > 0");
}

// Half spectrum of the period-2l even extension of a cosine series.
std::vector<Complex> to_half_spectrum(std::span<const double> coeffs, std::size_t n_out) {
  const std::size_t m = coeffs.size() - 1;
  const std::size_t m_out = n_out / 2;
  const double nn = static_cast<double>(n_out);
  std::vector<Complex> s(m_out + 1, 0.0);
  for (std::size_t k = 0; k <= std::min(m, m_out); ++k) {
    const bool edge = k == 0 || k == m_out;
    s[k] = (edge ? nn : 0.5 * nn) * coeffs[k];
  }
  return s;
}

double max_abs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

CosineExpansion::CosineExpansion(double half_length, std::size_t n)
    : l(half_length), psi(n / 2 + 1, 0.0), v(n / 2 + 1, 0.0) {
  require_length(half_length);
  require_even(n);
}

CosineExpansion::CosineExpansion(double half_length, std::vector<double> psi_coeffs, std::vector<double> v_coeffs)
    : l(half_length), psi(std::move(psi_coeffs)), v(std::move(v_coeffs)) {
  require_length(half_length);
  if (psi.size() < 2 || psi.size() != v.size()) {
    throw ValidationError("cosine expansion needs equally many (>= 2) psi and v coefficients");
  }
}

Eigen::VectorXd CosineExpansion::packed() const {
  const auto m1 = static_cast<Eigen::Index>(psi.size());
  Eigen::VectorXd c(2 * m1);
  for (Eigen::Index k = 0; k < m1; ++k) {
    c[k] = psi[static_cast<std::size_t>(k)];
    c[m1 + k] = v[static_cast<std::size_t>(k)];
  }
  return c;
}

CosineExpansion CosineExpansion::unpack(double half_length, const Eigen::VectorXd& c) {
  if (c.size() < 4 || c.size() % 2 != 0) throw ValidationError("packed coefficient vector has invalid length");
  const Eigen::Index m1 = c.size() / 2;
  std::vector<double> p(c.data(), c.data() + m1);
  std::vector<double> q(c.data() + m1, c.data() + 2 * m1);
  return CosineExpansion(half_length, std::move(p), std::move(q));
}

double CosineExpansion::max_coefficient() const {
  double m = 0.0;
  for (double x : psi) m = std::max(m, std::abs(x));
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> collocation_points(double l, std::size_t n) {
  require_length(l);
  require_even(n);
  std::vector<double> x(n / 2 + 1);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = 2.0 * l * static_cast<double>(j) / static_cast<double>(n);
  return x;
}

std::pair<double, double> evaluate_expansion(const CosineExpansion& e, double x, int deriv_order) {
  if (deriv_order < 0 || deriv_order > 4) throw ValidationError("derivative order must be in 0..4");
  double ps = 0.0, vs = 0.0;
  for (std::size_t k = 0; k < e.psi.size(); ++k) {
    const double kappa = static_cast<double>(k) * std::numbers::pi / e.l;
    const double c = std::cos(kappa * x), s = std::sin(kappa * x);
    double basis = 0.0;
    switch (deriv_order) {
      case 0: basis = c; break;
      case 1: basis = -kappa * s; break;
      case 2: basis = -kappa * kappa * c; break;
      case 3: basis = kappa * kappa * kappa * s; break;
      default: basis = kappa * kappa * kappa * kappa * c; break;
    }
    ps += e.psi[k] * basis;
    vs += e.v[k] * basis;
  }
  return {ps, vs};
}

CosineExpansion expansion_from_values(double l, std::span<const double> psi_values, std::span<const double> v_values) {
  if (psi_values.size() != v_values.size() || psi_values.size() < 2) {
    throw ValidationError("need equally many (>= 2) psi and v collocation values");
  }
  const std::size_t m = psi_values.size() - 1;
  const std::size_t n = 2 * m;
  if ((n & (n - 1)) != 0) throw ValidationError("collocation size N must be a power of two");
  SpectralWorkspace ws(Grid(2.0 * l, n));

  auto dct = [&](std::span<const double> f) {
    // mirror to one full period, then read off the real transform
    std::vector<double> g(n);
    for (std::size_t i = 0; i <= m; ++i) g[i] = f[i];
    for (std::size_t i = 1; i < m; ++i) g[n - i] = f[i];
    const std::vector<Complex> s = ws.forward(g);
    std::vector<double> c(m + 1);
    for (std::size_t k = 0; k <= m; ++k) c[k] = 2.0 * s[k].real() / static_cast<double>(n);
    c[0] *= 0.5;
    c[m] *= 0.5;
    return c;
  };
  return CosineExpansion(l, dct(psi_values), dct(v_values));
}

CosineExpansion gaussian_expansion(double l, std::size_t n, const GaussianPulse& psi, const GaussianPulse& v) {
  require_length(l);
  require_even(n);
  for (const auto* pulse : {&psi, &v}) {
    if (std::abs(pulse->center - l) > 1e-12 * l) {
      throw ValidationError("the cosine basis only represents profiles even about the domain center: the initial "
                            "Gaussian must be centered at l = " +
                            std::to_string(l) + ", got " + std::to_string(pulse->center));
    }
  }
  const std::vector<double> x = collocation_points(l, n);
  std::vector<double> pv(x.size()), vv(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    pv[j] = psi(x[j]);
    vv[j] = v(x[j]);
  }
  return expansion_from_values(l, pv, vv);
}

WaveProfile resample(const CosineExpansion& e, std::size_t n_points) {
  const Grid grid(2.0 * e.l, n_points);
  SpectralWorkspace ws(grid);
  return WaveProfile(grid, ws.inverse(to_half_spectrum(e.psi, n_points)), ws.inverse(to_half_spectrum(e.v, n_points)));
}

void NewtonConfig::validate() const {
  if (!(tol > 0.0)) throw ValidationError("Newton tol must be > 0");
  if (max_iter < 1) throw ValidationError("Newton max_iter must be >= 1");
  if (!(fd_step > 0.0)) throw ValidationError("fd_step must be > 0");
  if (max_halvings < 0) throw ValidationError("max_halvings must be >= 0");
}

CollocationProblem::CollocationProblem(double l, std::size_t n, const ModelParams& params, const Nonlinearity& nl)
    : l_(l), n_(n), m_(n / 2), params_(params), nl_(nl), ws_(Grid(2.0 * l, n)) {
  const std::size_t modes = m_ + 1;
  kappa_.resize(modes);
  d11_.resize(modes);
  d12_.resize(modes);
  d21_.resize(modes);
  d22_.resize(modes);
  for (std::size_t k = 0; k < modes; ++k) {
    kappa_[k] = static_cast<double>(k) * std::numbers::pi / l;
    const DispersionEntries e = dispersion_entries(params, kappa_[k]);
    d11_[k] = e.d11;
    d12_[k] = e.d12;
    d21_[k] = e.d21;
    d22_[k] = e.d22;
  }
  cos_table_.resize(n);
  sin_table_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = std::numbers::pi * static_cast<double>(j) / static_cast<double>(m_);
    cos_table_[j] = std::cos(a);
    sin_table_[j] = std::sin(a);
  }
}

void CollocationProblem::fields(const Eigen::VectorXd& c, Fields& f, bool linear_part) {
  if (static_cast<std::size_t>(c.size()) != n_unknowns()) {
    throw ValidationError("coefficient vector has " + std::to_string(c.size()) + " entries, expected " +
                          std::to_string(n_unknowns()));
  }
  const std::size_t modes = m_ + 1;
  const std::vector<Complex> psi_hat =
      to_half_spectrum(std::span<const double>(c.data(), modes), n_);
  const std::vector<Complex> v_hat =
      to_half_spectrum(std::span<const double>(c.data() + modes, modes), n_);

  std::vector<Complex> t(modes);
  auto keep = [&](std::vector<double>& out) { out.resize(modes); };
  auto apply = [&](const std::vector<Complex>& src, int order, std::vector<double>& out) {
    for (std::size_t k = 0; k < modes; ++k) t[k] = src[k] * derivative_symbol(kappa_[k], order, k == m_);
    out = ws_.inverse(t);
    keep(out);
  };
  apply(psi_hat, 0, f.psi);
  apply(psi_hat, 1, f.psi_x);
  apply(psi_hat, 2, f.psi_xx);
  apply(v_hat, 0, f.v);
  apply(v_hat, 1, f.v_x);
  apply(v_hat, 2, f.v_xx);

  if (linear_part) {
    for (std::size_t k = 0; k < modes; ++k) t[k] = d11_[k] * v_hat[k] + d12_[k] * psi_hat[k];
    f.lin1 = ws_.inverse(t);
    keep(f.lin1);
    for (std::size_t k = 0; k < modes; ++k) t[k] = d21_[k] * v_hat[k] + d22_[k] * psi_hat[k];
    f.lin2 = ws_.inverse(t);
    keep(f.lin2);
  }
}

Eigen::VectorXd CollocationProblem::residual(const Eigen::VectorXd& c) {
  Fields f;
  fields(c, f, true);
  const std::size_t modes = m_ + 1;
  std::vector<double> h1(modes), h2(modes);
  nl_.evaluate(JetFields{f.psi, f.psi_x, f.psi_xx, f.v, f.v_x, f.v_xx}, h1, h2);
  Eigen::VectorXd r(2 * modes);
  for (std::size_t i = 0; i < modes; ++i) {
    r[static_cast<Eigen::Index>(i)] = f.lin1[i] - h1[i];
    r[static_cast<Eigen::Index>(modes + i)] = f.lin2[i] - h2[i];
  }
  return r;
}

Eigen::MatrixXd CollocationProblem::jacobian(const Eigen::VectorXd& c, JacobianMode mode, double fd_step) {
  if (mode == JacobianMode::Analytic) return analytic_jacobian(c);

  const auto n = static_cast<Eigen::Index>(n_unknowns());
  Eigen::MatrixXd jac(n, n);
  Eigen::VectorXd probe = c;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double h = fd_step * std::max(1.0, std::abs(c[j]));
    probe[j] = c[j] + h;
    const Eigen::VectorXd plus = residual(probe);
    probe[j] = c[j] - h;
    const Eigen::VectorXd minus = residual(probe);
    probe[j] = c[j];
    jac.col(j) = (plus - minus) / (2.0 * h);
  }
  return jac;
}

Eigen::MatrixXd CollocationProblem::analytic_jacobian(const Eigen::VectorXd& c) {
  Fields f;
  fields(c, f, false);
  const std::size_t modes = m_ + 1;
  const auto mi = static_cast<Eigen::Index>(modes);
  Eigen::MatrixXd jac(2 * mi, 2 * mi);

  for (std::size_t i = 0; i < modes; ++i) {
    const Jet s{f.psi[i], f.psi_x[i], f.psi_xx[i], f.v[i], f.v_x[i], f.v_xx[i]};
    const JetGradient g1 = nl_.h1_gradient(s);
    const JetGradient g2 = nl_.h2_gradient(s);
    const auto row1 = static_cast<Eigen::Index>(i);
    const Eigen::Index row2 = mi + row1;
    for (std::size_t k = 0; k < modes; ++k) {
      const std::size_t idx = (k * i) % n_;
      const double cs = cos_table_[idx];
      const double sn = sin_table_[idx];
      const double kap = kappa_[k];
      // basis value, first and second derivative of cos(kappa x) at x_i
      const double b0 = cs, b1 = -kap * sn, b2 = -kap * kap * cs;
      const auto col_psi = static_cast<Eigen::Index>(k);
      const Eigen::Index col_v = mi + col_psi;
      jac(row1, col_psi) = d12_[k] * b0 - (g1[0] * b0 + g1[1] * b1 + g1[2] * b2);
      jac(row1, col_v) = d11_[k] * b0 - (g1[3] * b0 + g1[4] * b1 + g1[5] * b2);
      jac(row2, col_psi) = d22_[k] * b0 - (g2[0] * b0 + g2[1] * b1 + g2[2] * b2);
      jac(row2, col_v) = d21_[k] * b0 - (g2[3] * b0 + g2[4] * b1 + g2[5] * b2);
    }
  }
  return jac;
}

NewtonResult newton_solve(const CosineExpansion& initial, const ModelParams& params, const Nonlinearity& nl,
                          const NewtonConfig& cfg) {
  cfg.validate();
  const std::size_t n = initial.n();
  if ((n & (n - 1)) != 0) throw ValidationError("collocation size N must be a power of two");
  CollocationProblem problem(initial.l, n, params, nl);

  NewtonReport report;
  report.in_regime = check_velocity_in_regime(params);
  if (!report.in_regime) report.warnings.push_back("omega lies outside the admissible velocity regime");

  Eigen::VectorXd c = initial.packed();
  Eigen::VectorXd r = problem.residual(c);
  double res = max_abs(r);
  report.initial_residual = res;
  report.termination = Termination::MaxIter;

  for (int it = 1; it <= cfg.max_iter; ++it) {
    report.iterations = it;
    const Eigen::MatrixXd jac = problem.jacobian(c, cfg.jacobian_mode, cfg.fd_step);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
    const double rcond = lu.rcond();
    if (!(rcond > cfg.rcond_floor)) throw SingularJacobianError(it, rcond);
    const Eigen::VectorXd delta = lu.solve(r);
    if (!delta.allFinite()) throw SingularJacobianError(it, rcond);

    double lambda = 1.0;
    Eigen::VectorXd c_new = c - delta;
    Eigen::VectorXd r_new = problem.residual(c_new);
    if (cfg.damping == Damping::Backtracking) {
      for (int h = 0; h < cfg.max_halvings && !(max_abs(r_new) < res); ++h) {
        lambda *= 0.5;
        c_new = c - lambda * delta;
        r_new = problem.residual(c_new);
      }
    }

    NewtonRecord rec;
    rec.damping = lambda;
    rec.step_norm = lambda * max_abs(delta);
    rec.relative_step = rec.step_norm / std::max(max_abs(c_new), 1e-300);
    rec.residual_inf = max_abs(r_new);
    report.history.push_back(rec);

    c = std::move(c_new);
    r = std::move(r_new);
    res = rec.residual_inf;

    if (!c.allFinite() || !std::isfinite(res)) {
      report.termination = Termination::Diverged;
      break;
    }
    // a zero step from the zero state has relative size 0/0; count it as converged
    const bool step_small = rec.step_norm == 0.0 || rec.relative_step < cfg.tol;
    if (step_small && res < cfg.tol) {
      report.termination = Termination::Converged;
      break;
    }
  }

  CosineExpansion result = CosineExpansion::unpack(initial.l, c);
  if (report.termination == Termination::Converged) {
    report.converged = true;
    if (result.max_coefficient() < cfg.collapse_threshold) {
      report.termination = Termination::CollapsedToZero;
      report.warnings.push_back("Newton converged to the trivial solution");
    }
  }

  const auto& h = report.history;
  if (h.size() >= 3) {
    double worst = 0.0;
    for (std::size_t i = h.size() - 2; i < h.size(); ++i) {
      if (h[i - 1].step_norm > 0.0 && h[i].step_norm > 0.0) {
        worst = std::max(worst, h[i].step_norm / std::pow(h[i - 1].step_norm, 1.5));
      }
    }
    report.convergence_constant = worst;
  }
  return NewtonResult{std::move(result), std::move(report)};
}

}  // namespace solitwave
