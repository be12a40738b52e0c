#pragma once

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

#include "solitwave/model.hpp"
#include "solitwave/nonlinearity.hpp"
#include "solitwave/petviashvili.hpp"
#include "solitwave/profile.hpp"
#include "solitwave/spectral.hpp"

namespace solitwave {

/// psi(x) = sum_k psi_k cos(k pi x / l), k = 0..N/2, and likewise v.
///
/// The represented functions are even about 0 and about l and have period 2l.
struct CosineExpansion {
  double l = 1.0;
  std::vector<double> psi;
  std::vector<double> v;

  CosineExpansion() = default;
  CosineExpansion(double half_length, std::size_t n);
  CosineExpansion(double half_length, std::vector<double> psi_coeffs, std::vector<double> v_coeffs);

  /// N, the number of grid points of one period.
  std::size_t n() const noexcept { return 2 * (psi.size() - 1); }
  std::size_t n_coeffs() const noexcept { return psi.size(); }

  /// [psi_0..psi_M, v_0..v_M]
  Eigen::VectorXd packed() const;
  static CosineExpansion unpack(double half_length, const Eigen::VectorXd& c);

  double max_coefficient() const;
};

/// x_j = 2 l j / N for j = 0..N/2.
std::vector<double> collocation_points(double l, std::size_t n);

/// Term-wise differentiated series at x; deriv_order in 0..4.
std::pair<double, double> evaluate_expansion(const CosineExpansion& e, double x, int deriv_order);

/// Cosine coefficients interpolating psi and v at the N/2 + 1 collocation points.
CosineExpansion expansion_from_values(double l, std::span<const double> psi_values, std::span<const double> v_values);

/// Interpolant of Gaussian initial data; both pulses must be centered at l.
CosineExpansion gaussian_expansion(double l, std::size_t n, const GaussianPulse& psi, const GaussianPulse& v);

/// Samples on the uniform periodic grid of [0, 2l) with n_points points
/// (zero-padded or truncated in mode space).
WaveProfile resample(const CosineExpansion& e, std::size_t n_points);

enum class JacobianMode { FiniteDifference, Analytic };
enum class Damping { None, Backtracking };

struct NewtonConfig {
  double tol = 1e-12;
  int max_iter = 50;
  JacobianMode jacobian_mode = JacobianMode::FiniteDifference;
  double fd_step = 1e-7;
  Damping damping = Damping::None;
  int max_halvings = 20;
  /// Coefficient max-norm below which a converged state counts as trivial.
  double collapse_threshold = 1e-8;
  /// Reciprocal condition estimate below which the Jacobian is treated as singular.
  double rcond_floor = 1e-15;

  void validate() const;
};

struct NewtonRecord {
  double step_norm = 0.0;      // max |delta c|
  double relative_step = 0.0;  // max |delta c| / max |c_new|
  double residual_inf = 0.0;   // at the new iterate
  double damping = 1.0;
};

struct NewtonReport {
  int iterations = 0;
  bool converged = false;
  Termination termination = Termination::MaxIter;
  std::vector<NewtonRecord> history;
  double initial_residual = 0.0;
  /// max over the last three steps of |dc_{k+1}| / |dc_k|^1.5 (0 if undefined).
  double convergence_constant = 0.0;
  bool in_regime = true;
  std::vector<std::string> warnings;
};

/// The N + 2 collocation equations for one parameter set.
class CollocationProblem {
 public:
  CollocationProblem(double l, std::size_t n, const ModelParams& params, const Nonlinearity& nl);

  double half_length() const noexcept { return l_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t n_unknowns() const noexcept { return n_ + 2; }
  const ModelParams& params() const noexcept { return params_; }
  const Nonlinearity& nonlinearity() const noexcept { return nl_; }

  /// Equation-1 block then equation-2 block, each at the N/2 + 1 points.
  Eigen::VectorXd residual(const Eigen::VectorXd& c);
  Eigen::VectorXd residual(const CosineExpansion& e) { return residual(e.packed()); }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& c, JacobianMode mode, double fd_step = 1e-7);

 private:
  struct Fields {
    std::vector<double> psi, psi_x, psi_xx, v, v_x, v_xx;
    std::vector<double> lin1, lin2;
  };
  void fields(const Eigen::VectorXd& c, Fields& f, bool linear_part);
  Eigen::MatrixXd analytic_jacobian(const Eigen::VectorXd& c);

  double l_;
  std::size_t n_;
  std::size_t m_;
  ModelParams params_;
  Nonlinearity nl_;
  SpectralWorkspace ws_;
  std::vector<double> kappa_;
  std::vector<double> d11_, d12_, d21_, d22_;
  std::vector<double> cos_table_, sin_table_;  // cos(pi j / M), j = 0..2M-1
};

struct NewtonResult {
  CosineExpansion expansion;
  NewtonReport report;
};

NewtonResult newton_solve(const CosineExpansion& initial, const ModelParams& params, const Nonlinearity& nl,
                          const NewtonConfig& cfg = {});

}  // namespace solitwave
