#include <doctest.h>

#include <cmath>

#include "torsionlab/asymptotic.hpp"
#include "torsionlab/quadrature.hpp"

using namespace torsionlab;

namespace {

Eigen::VectorXcd scalar(double v) {
  Eigen::VectorXcd r(1);
  r(0) = v;
  return r;
}

AsymptoticFit exact_fit(const std::vector<double>& exponents, const std::vector<double>& coeffs,
                        double sample_scale = 1.0) {
  AsymptoticFit fit;
  fit.exponents = exponents;
  for (double c : coeffs) fit.coefficients.push_back(scalar(c));
  fit.max_sample_norm = sample_scale;
  return fit;
}

// Independent analytic-continuation oracle:
// zeta(s) = -Gamma(s)^{-1} M(s) with M(s) = int_0^inf t^{s-1} f dt evaluated
// by quadrature at small s > 0 (pole subtraction with the known singular
// coefficients), then zeta'(0) by Richardson extrapolation of
// (zeta(s) - zeta(0))/s with zeta(0) = -A_0.
double continuation_oracle(const std::function<double(double)>& f,
                           const std::vector<std::pair<double, double>>& singular,
                           double t_max) {
  auto mellin = [&](double s) {
    // int_0^1 t^{s-1} (f - singular) dt, analytic in w = sqrt(t)
    auto w_integrand = [&](double w) {
      const double t = w * w;
      double v = f(t);
      for (auto [e, a] : singular) v -= a * std::pow(t, e);
      return scalar(2.0 * std::pow(w, 2.0 * s - 1.0) * v);
    };
    QuadResult q1 = integrate_adaptive(w_integrand, 1e-7, 1.0, 1e-14, 1e-12, 4000);
    QuadResult q2 = integrate_adaptive_log(
        [&](double t) { return scalar(std::pow(t, s - 1.0) * f(t)); }, 1.0, t_max, 1e-14,
        1e-12, 4000);
    double m = q1.value(0).real() + q2.value(0).real();
    for (auto [e, a] : singular) m += a / (s + e);
    return m;
  };
  auto zeta = [&](double s) { return -mellin(s) / std::tgamma(s); };
  double a0 = 0.0;
  for (auto [e, a] : singular)
    if (std::abs(e) < 1e-12) a0 = a;
  const double zeta0 = -a0;
  // Richardson on (zeta(s) - zeta(0))/s: two levels remove O(s) and O(s^2).
  auto d = [&](double s) { return (zeta(s) - zeta0) / s; };
  const double s0 = 0.05;
  const double d1 = d(s0), d2 = d(s0 / 2.0), d4 = d(s0 / 4.0);
  const double r1 = 2.0 * d2 - d1, r2 = 2.0 * d4 - d2;
  return (4.0 * r2 - r1) / 3.0;
}

} // namespace

TEST_CASE("fit recovers synthetic expansions") {
  // exactly representable inputs on the declared exponent set
  const std::vector<double> base{-1.0, -0.5, 0.0, 0.5, 1.0, 1.5};
  // c0 + c1 t
  auto f1 = [](double t) { return scalar(0.8 - 1.7 * t); };
  AsymptoticFit fit1 = fit_asymptotics(f1, 1e-4, 1e-2, 24, base);
  CHECK(std::abs(fit1.coefficient_for(0.0)(0).real() - 0.8) < 1e-10);
  CHECK(std::abs(fit1.coefficient_for(1.0)(0).real() + 1.7) < 1e-6);
  CHECK(std::abs(fit1.coefficient_for(-1.0)(0)) < 1e-10);

  // pure t^{-1/2}
  auto f2 = [](double t) { return scalar(2.5 / std::sqrt(t)); };
  AsymptoticFit fit2 = fit_asymptotics(f2, 1e-4, 1e-2, 24, base);
  CHECK(std::abs(fit2.coefficient_for(-0.5)(0).real() - 2.5) < 1e-10);
  for (double e : {-1.0, 0.0, 0.5, 1.0, 1.5})
    CHECK(fit2.coefficient_for(e).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("fit flags an unusable exponent set") {
  auto f = [](double t) { return scalar(t); };
  std::vector<std::pair<double, Eigen::VectorXcd>> samples;
  for (int i = 0; i < 40; ++i) {
    // nearly a single point: exponents indistinguishable
    const double t = 1e-3 * (1.0 + 1e-12 * i);
    samples.emplace_back(t, f(t));
  }
  CHECK_THROWS_AS(fit_asymptotics(samples, {-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}),
                  std::invalid_argument);
}

TEST_CASE("regularized integral: t e^{-t} (no regularization needed)") {
  auto f = [](double t) { return scalar(t * std::exp(-t)); };
  AsymptoticFit fit =
      fit_asymptotics(f, 1e-4, 1e-2, 32, {-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0});
  RegularizedIntegral reg = regularized_time_integral(f, fit);
  // symbolic continuation: zeta(s) = -Gamma(s+1)/Gamma(s) = -s, zeta'(0) = -1
  CHECK(std::abs(reg.value(0).real() + 1.0) < 1e-9);
  CHECK(reg.finite_part_constants.cwiseAbs().maxCoeff() < 1e-12);
  // numeric Richardson continuation agrees at its own accuracy
  const double oracle = continuation_oracle([](double t) { return t * std::exp(-t); }, {}, 60.0);
  CHECK(std::abs(reg.value(0).real() - oracle) < 2e-3);
}

TEST_CASE("regularized integral: e^{-t} (constant term regularized)") {
  auto f = [](double t) { return scalar(std::exp(-t)); };
  AsymptoticFit fit = exact_fit({0.0, 1.0, 2.0, 3.0}, {1.0, -1.0, 0.5, -1.0 / 6.0});
  RegularizedIntegral reg = regularized_time_integral(f, fit);
  // symbolic continuation: zeta(s) = -Gamma(s)/Gamma(s) = -1, zeta'(0) = 0,
  // split into integrals plus the finite-part constant Gamma'(1) A_0 = -gamma
  CHECK(std::abs(reg.value(0)) < 1e-9);
  CHECK(std::abs(reg.finite_part_constants(0).real() + euler_gamma()) < 1e-12);
  CHECK(std::abs((reg.integral_01 + reg.integral_1inf)(0).real() - euler_gamma()) < 1e-9);
  const double oracle =
      continuation_oracle([](double t) { return std::exp(-t); }, {{0.0, 1.0}}, 60.0);
  CHECK(std::abs(reg.value(0).real() - oracle) < 2e-3);
}

TEST_CASE("regularized integral: t^{-1/2} e^{-t} (half-integer pole)") {
  auto f = [](double t) { return scalar(std::exp(-t) / std::sqrt(t)); };
  AsymptoticFit fit =
      exact_fit({-0.5, 0.5, 1.5, 2.5}, {1.0, -1.0, 0.5, -1.0 / 6.0});
  RegularizedIntegral reg = regularized_time_integral(f, fit);
  // symbolic continuation: zeta(s) = -Gamma(s - 1/2)/Gamma(s), so
  // zeta'(0) = -Gamma(-1/2) = 2 sqrt(pi), finite-part constant 2 A_{-1/2} = 2
  const double expected = 2.0 * std::sqrt(3.14159265358979323846);
  CHECK(std::abs(reg.value(0).real() - expected) < 1e-9);
  CHECK(std::abs(reg.finite_part_constants(0).real() - 2.0) < 1e-12);
  const double oracle = continuation_oracle(
      [](double t) { return std::exp(-t) / std::sqrt(t); }, {{-0.5, 1.0}}, 60.0);
  CHECK(std::abs(reg.value(0).real() - oracle) < 2e-3);
}

TEST_CASE("noise floor suppresses spurious singular coefficients") {
  auto f = [](double t) { return scalar(t * std::exp(-2.0 * t)); };
  AsymptoticFit fit =
      fit_asymptotics(f, 1e-4, 1e-2, 24, {-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0});
  RegularizedIntegralOptions opts;
  opts.decay_rate = 2.0;
  RegularizedIntegral reg = regularized_time_integral(f, fit, opts);
  CHECK(reg.finite_part_constants.cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(reg.value(0).real() + 0.5) < 1e-9); // -int e^{-2t} dt = -1/2
}
