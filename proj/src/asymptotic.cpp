#include "torsionlab/asymptotic.hpp"

#include <cmath>
#include <stdexcept>

namespace torsionlab {

double euler_gamma() { return 0.57721566490153286060651209008240243; }

Eigen::VectorXcd AsymptoticFit::coefficient_for(double exponent) const {
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (std::abs(exponents[i] - exponent) < 1e-12) return coefficients[i];
  if (coefficients.empty()) throw std::logic_error("AsymptoticFit: empty fit");
  return Eigen::VectorXcd::Zero(coefficients[0].size());
}

Eigen::VectorXcd AsymptoticFit::eval(double t, const std::function<bool(double)>& keep) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(coefficients.empty() ? 0 : coefficients[0].size());
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (keep(exponents[i])) v += coefficients[i] * std::pow(t, exponents[i]);
  return v;
}

AsymptoticFit fit_asymptotics(const std::vector<std::pair<double, Eigen::VectorXcd>>& samples,
                              const std::vector<double>& exponents) {
  const int m = int(samples.size());
  const int n = int(exponents.size());
  if (m < 2 * n)
    throw std::invalid_argument("fit_asymptotics: need at least 2x samples per exponent");
  const int comps = int(samples[0].second.size());

  // The mixed-exponent basis is badly conditioned on a narrow window, so the
  // (tiny) least-squares problem is solved in extended precision with column
  // equilibration.
  using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using LongCMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
  LongMatrix design(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      design(i, j) = std::pow((long double)samples[i].first, (long double)exponents[j]);
  Eigen::Matrix<long double, Eigen::Dynamic, 1> colscale(n);
  for (int j = 0; j < n; ++j) {
    colscale(j) = design.col(j).norm();
    if (colscale(j) == 0.0L) colscale(j) = 1.0L;
    design.col(j) /= colscale(j);
  }
  Eigen::JacobiSVD<LongMatrix> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond = double(svd.singularValues()(0) / svd.singularValues()(n - 1));
  if (!(cond < 1e13))
    throw std::invalid_argument("fit_asymptotics: ill-conditioned design matrix");

  LongCMatrix rhs(m, comps);
  for (int i = 0; i < m; ++i)
    for (int c = 0; c < comps; ++c) rhs(i, c) = samples[i].second(c);
  LongCMatrix sol(n, comps);
  for (int c = 0; c < comps; ++c) {
    // solve via U/V applied to real and imaginary parts
    LongMatrix re = rhs.col(c).real(), im = rhs.col(c).imag();
    LongMatrix sre = svd.solve(re), sim = svd.solve(im);
    for (int j = 0; j < n; ++j) sol(j, c) = std::complex<long double>(sre(j), sim(j));
  }

  AsymptoticFit fit;
  fit.exponents = exponents;
  fit.condition = cond;
  fit.window_lo = samples.front().first;
  fit.window_hi = samples.back().first;
  fit.max_sample_norm = double(rhs.cwiseAbs().maxCoeff());
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXcd row(comps);
    for (int c = 0; c < comps; ++c)
      row(c) = std::complex<double>(double(sol(j, c).real() / colscale(j)),
                                    double(sol(j, c).imag() / colscale(j)));
    fit.coefficients.push_back(row);
  }
  fit.residual = double((design * sol - rhs).cwiseAbs().maxCoeff());
  return fit;
}

AsymptoticFit fit_asymptotics(const std::function<Eigen::VectorXcd(double)>& f, double lo,
                              double hi, int n_samples, const std::vector<double>& exponents) {
  std::vector<std::pair<double, Eigen::VectorXcd>> samples;
  samples.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double t = lo * std::pow(hi / lo, double(i) / double(n_samples - 1));
    samples.emplace_back(t, f(t));
  }
  return fit_asymptotics(samples, exponents);
}

RegularizedIntegral regularized_time_integral(const std::function<Eigen::VectorXcd(double)>& f,
                                              const AsymptoticFit& fit,
                                              const RegularizedIntegralOptions& opts) {
  RegularizedIntegral out;
  const int comps = int(fit.coefficients.empty() ? f(1.0).size() : fit.coefficients[0].size());

  // Fitted coefficients whose contribution at the window edge stays below
  // the floor are treated as absent; this keeps fit noise in the singular
  // exponents from being amplified near t = 0. Coefficient noise scales like
  // the fit residual at the window edge, genuine singular terms like the
  // samples themselves. (A singular term drowned more than ~1e5 under a
  // larger one is below the detection limit of the fit.)
  const double t_edge = fit.window_lo > 0.0 ? fit.window_lo : 1e-4;
  const double floor =
      std::max({opts.coefficient_abs_floor, 1e4 * fit.residual,
                opts.coefficient_rel_floor * fit.max_sample_norm});
  std::vector<std::size_t> active_nonpos;
  for (std::size_t i = 0; i < fit.exponents.size(); ++i) {
    const double e = fit.exponents[i];
    if (e > 1e-12) continue;
    const double contribution =
        fit.coefficients[i].cwiseAbs().maxCoeff() * std::pow(t_edge, e);
    if (contribution > floor) active_nonpos.push_back(i);
  }

  // -int_0^1 (f - sum_{e<=0} A_e t^e) dt/t evaluated in w = sqrt(t), where
  // the integrand is analytic: 2 (f(w^2) - sum A_e w^{2e}) / w on [w_lo, 1].
  const double w_lo = active_nonpos.empty() ? 1e-6 : std::max(opts.w_lo, 1e-4);
  auto integrand01 = [&](double w) {
    const double t = w * w;
    Eigen::VectorXcd v = f(t);
    for (std::size_t i : active_nonpos)
      v -= fit.coefficients[i] * std::pow(t, fit.exponents[i]);
    return ((2.0 / w) * v).eval();
  };
  QuadResult q1 = integrate_adaptive(integrand01, w_lo, 1.0, opts.abs_tol, opts.rel_tol, 4000);
  // Below w_lo the fitted positive exponents supply the remainder.
  Eigen::VectorXcd below = Eigen::VectorXcd::Zero(comps);
  const double t_lo = w_lo * w_lo;
  for (std::size_t i = 0; i < fit.exponents.size(); ++i) {
    const double e = fit.exponents[i];
    if (e > 1e-12) below += fit.coefficients[i] * (std::pow(t_lo, e) / e);
  }
  out.integral_01 = -(q1.value + below);

  double t_max = opts.t_max;
  if (t_max <= 0.0) t_max = std::max(2.0, 40.0 / std::max(opts.decay_rate, 1e-8));
  auto integrand1inf = [&](double t) { return (f(t) / t).eval(); };
  QuadResult q2 =
      integrate_adaptive_log(integrand1inf, 1.0, t_max, opts.abs_tol, opts.rel_tol, 4000);
  out.integral_1inf = -q2.value;
  // One-term bound on the dropped tail, C e^{-a t}/t beyond t_max.
  out.tail_bound =
      f(t_max).cwiseAbs().maxCoeff() / (std::max(opts.decay_rate, 1e-8) * t_max);
  out.quad_error = q1.error_estimate + q2.error_estimate;

  // Continuation constants: d/ds of -1/((s+e) Gamma(s)) at s = 0 gives
  // Gamma'(1) for e = 0 and -1/e for e < 0.
  out.finite_part_constants = Eigen::VectorXcd::Zero(comps);
  for (std::size_t i : active_nonpos) {
    const double e = fit.exponents[i];
    if (std::abs(e) <= 1e-12)
      out.finite_part_constants += -euler_gamma() * fit.coefficients[i];
    else
      out.finite_part_constants += fit.coefficients[i] * (-1.0 / e);
  }
  out.value = out.integral_01 + out.integral_1inf + out.finite_part_constants;
  return out;
}

} // namespace torsionlab
