#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "torsionlab/quadrature.hpp"

namespace torsionlab {

/// Fitted small-t expansion sum_e A_e t^e of a vector-valued function.
struct AsymptoticFit {
  std::vector<double> exponents;
  std::vector<Eigen::VectorXcd> coefficients; // one vector per exponent
  double residual = 0.0;                      // max-norm of the LS residual
  double condition = 0.0;                     // scaled design-matrix condition
  double window_lo = 0.0, window_hi = 0.0;
  double max_sample_norm = 0.0;

  Eigen::VectorXcd coefficient_for(double exponent) const;
  /// Fit evaluated at t with exponents restricted by the predicate.
  Eigen::VectorXcd eval(double t, const std::function<bool(double)>& keep) const;
};

AsymptoticFit fit_asymptotics(const std::vector<std::pair<double, Eigen::VectorXcd>>& samples,
                              const std::vector<double>& exponents);

/// Convenience: sample f log-uniformly on [lo, hi] and fit.
AsymptoticFit fit_asymptotics(const std::function<Eigen::VectorXcd(double)>& f, double lo,
                              double hi, int n_samples, const std::vector<double>& exponents);

struct RegularizedIntegralOptions {
  double w_lo = 1e-4;        // lower end in w = sqrt(t) when singular terms are active
  double t_max = 0.0;        // 0: choose from decay_rate
  double decay_rate = 1.0;   // a in |f| <~ C e^{-a t}
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  double coefficient_abs_floor = 1e-13; // window-edge contributions below count as zero
  double coefficient_rel_floor = 1e-5;  // relative to the max sample norm
};

struct RegularizedIntegral {
  Eigen::VectorXcd value;                 // zeta'(0)
  Eigen::VectorXcd finite_part_constants; // contribution of exponents e <= 0
  Eigen::VectorXcd integral_01;           // -int_0^1 (f - sum_{e<=0} A_e t^e) dt/t
  Eigen::VectorXcd integral_1inf;         // -int_1^inf f dt/t
  double tail_bound = 0.0;
  double quad_error = 0.0;
};

/// zeta'(0) for zeta(s) = -Gamma(s)^{-1} int_0^inf t^{s-1} f(t) dt, where f
/// decays exponentially and has the fitted small-t expansion. Computed as
///   -int_0^1 (f - sum_{e<=0} A_e t^e) dt/t - int_1^inf f dt/t
///   + Gamma'(1) A_0 - sum_{e<0} A_e / e,
/// the derivative at s = 0 of -1/((s+e) Gamma(s)) supplying the constants.
RegularizedIntegral regularized_time_integral(const std::function<Eigen::VectorXcd(double)>& f,
                                              const AsymptoticFit& fit,
                                              const RegularizedIntegralOptions& opts = {});

/// Euler-Mascheroni constant (Gamma'(1) = -gamma).
double euler_gamma();

} // namespace torsionlab
