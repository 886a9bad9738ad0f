#pragma once

#include <Eigen/Dense>
#include <functional>

namespace torsionlab {

using QuadIntegrand = std::function<Eigen::VectorXcd(double)>;

struct QuadResult {
  Eigen::VectorXcd value;
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (7,15) quadrature for vector-valued integrands.
/// All components share one subdivision; the error control is on the
/// max-norm across components.
QuadResult integrate_adaptive(const QuadIntegrand& f, double a, double b,
                              double abs_tol = 1e-12, double rel_tol = 1e-10,
                              int max_intervals = 2000);

/// Same, after the substitution t = e^s (suited to dt/t weights on wide
/// positive ranges): integrates f(t) dt over [a, b] with 0 < a < b.
QuadResult integrate_adaptive_log(const QuadIntegrand& f, double a, double b,
                                  double abs_tol = 1e-12, double rel_tol = 1e-10,
                                  int max_intervals = 2000);

} // namespace torsionlab
