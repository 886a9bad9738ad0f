#pragma once

#include <functional>
#include <string>

#include "torsionlab/flat_complex.hpp"
#include "torsionlab/lapack_dense.hpp"
#include "torsionlab/asymptotic.hpp"

namespace torsionlab {

/// Fourier-Galerkin data of a flat complex on the 2-torus, prepared once per
/// (spec, N): Fourier windows of the coefficient fields in the orthonormal
/// metric frame, the Clifford matrices, and the grading split of the fiber
/// Lambda(T*T^2) (x) E.
///
/// The operator and its skew companion act on modes k in [-N/2, N/2)^2. In
/// the orthonormal frame both anticommute with the grading G and the
/// deformed operator is Hermitian for every r, so everything reduces to the
/// (+,-) block X and the companion block Y_{+-}.
class TorusOperatorData {
public:
  TorusOperatorData(const FlatComplexSpec& spec, int n_modes, int fine_factor = 4);

  int n_modes() const { return n_; }
  int fiber_dim() const { return fiber_; }
  int half_fiber() const { return fiber_ / 2; }
  long dimension() const { return long(fiber_) * n_ * n_; }
  long half_dimension() const { return dimension() / 2; }

  /// Fiber template of the multiplication part at mode offset m (|m|<=N-1):
  /// sum_a c_a (conn_a + (i r / 2) omega_a)^(m) + (sqrt(u)/2) (W1 + i r W2)^(m).
  Matrix fiber_template(const std::vector<int>& m, double u, double r) const;
  /// Fiber template of the companion at offset m:
  /// sum_a c_a (1/2) omega_a^(m) + (sqrt(u)/2) W2^(m).
  Matrix companion_template(const std::vector<int>& m, double u) const;
  /// Derivative part at mode k: sum_a (i k_a) c_a.
  Matrix derivative_symbol(const std::vector<int>& k) const;

  const Matrix& t_plus() const { return t_plus_; }
  const Matrix& t_minus() const { return t_minus_; }
  const Matrix& grading_fiber() const { return g_fiber_; }

  /// Max norm of the (+,+)/(-,-) template blocks (structurally zero).
  double grading_defect(double u, double r) const;
  /// Max norm of template Hermiticity defect T(m)^H - T(-m).
  double hermiticity_defect(double u, double r) const;

private:
  int n_, fiber_;
  int r_total_;
  std::vector<Matrix> c_; // Clifford matrices on the fiber (p of them)
  Matrix g_fiber_, t_plus_, t_minus_;
  // Fourier windows, indexed [m1 + N - 1][m2 + N - 1]
  std::vector<std::vector<Matrix>> conn_hat_[2], omega_hat_[2], w1_hat_, w2_hat_;
  const Matrix& window(const std::vector<std::vector<Matrix>>& w,
                       const std::vector<int>& m) const;
};

struct OperatorBundle {
  int n_modes = 0;
  double u = 0.0, r = 0.0;
  Matrix x;       // (+,-) block of the deformed operator
  Matrix y_plus;  // (+,-) block of the companion
  double grading_defect = 0.0;
  double hermiticity_defect = 0.0;
};

OperatorBundle assemble_operator(const TorusOperatorData& data, double u, double r);

/// Dense reconstruction (small N diagnostics/tests): full operator, companion
/// and grading in the split basis.
struct DenseBundle {
  Matrix d, y, g;
};
DenseBundle assemble_dense(const TorusOperatorData& data, double u, double r);

struct DeltaResult {
  double delta = 0.0;        // -2 Re tr(X^{-1} Y_{+-})
  double sigma_min = 0.0;    // smallest singular value estimate of X
  double gap = 0.0;          // sigma_min^2, a lower bound witness for spec(D^2)
};

/// Time-integrated supertrace via the LU path.
DeltaResult delta_u(const OperatorBundle& bundle);

/// Spectral paths: exact eigenresolution of the heat trace.
struct SpectralDelta {
  Eigen::VectorXd lambda;  // eigenvalues of D^2 (squared singular values of X)
  Eigen::VectorXd weight;  // heat-trace weights: h(t) = sum_j weight_j e^{-lambda_j t}
  double delta_eig = 0.0;  // sum weight_j / lambda_j
  double delta_quad = 0.0; // adaptive quadrature of h plus the analytic tail
  double quad_error = 0.0;
  double heat_trace(double t) const;
};
SpectralDelta delta_spectral(const OperatorBundle& bundle);

/// Small-t structure of the heat trace h(t) = str[D Y e^{-t D^2}].
AsymptoticFit small_t_structure(const SpectralDelta& spectral, double window_lo = 0.02,
                                double window_hi = 0.5, int samples = 24);

struct ExperimentConfig {
  std::vector<double> u_schedule{16.0, 64.0, 256.0};
  double r = 1.0;
  int n_modes = 24;
  int n_modes_refined = 32; // 0 disables the refinement pass
  int rhs_grid = 24;
  int fine_factor = 4;
  long dimension_cap = 20000;
  double error_floor = 1e-12;
  bool spectral_diagnostics = false; // SVD paths at the first u (costly)
  std::string heat_trace_csv;        // dump h(t) samples when non-empty
};

struct SweepResult {
  int n_modes = 0;
  std::vector<double> delta;      // per u
  std::vector<double> sigma_min;  // per u
  double extrapolated = 0.0;
  std::vector<double> model_coefficients; // [delta_inf, a, b] for eps = u^{-1/2}
};

struct ExperimentReport {
  ExperimentConfig config;
  SweepResult sweep, sweep_refined;
  Complex rhs_integral = 0.0;
  double relative_error = 0.0;
  double relative_error_refined = 0.0;
  double lambda_min = 0.0;
  bool refinement_monotone = true;
  bool converged = true;
  std::string message;
};

ExperimentReport run_experiment(const FlatComplexSpec& spec, const ExperimentConfig& config);

/// Least-squares fit of delta(u) = d_inf + a u^{-1/2} + b u^{-1}.
std::vector<double> extrapolate_adiabatic(const std::vector<double>& u,
                                          const std::vector<double>& delta);

} // namespace torsionlab
