#include <doctest.h>

#include <cmath>

#include "torsionlab/char_forms.hpp"
#include "torsionlab/rng.hpp"

using namespace torsionlab;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

// Independent brute-force oracle for the log series of (x/2) coth(x/2):
// long-double Taylor division of cosh(y)/ (sinh(y)/y) at y = x/2, then a
// numeric series log. Returns coefficients of x^{2m}.
std::vector<long double> oracle_log_series(int mmax) {
  const int n = mmax + 2;
  // sinh(y)/y and cosh(y) in powers of y^2
  std::vector<long double> sinh_over(n, 0.0L), cosh_s(n, 0.0L);
  long double fact = 1.0L;
  for (int m = 0; m < n; ++m) {
    // y^{2m} coefficient of sinh(y)/y is 1/(2m+1)!, of cosh is 1/(2m)!
    long double f2m = 1.0L, f2m1 = 1.0L;
    for (int k = 2; k <= 2 * m; ++k) f2m *= k;
    for (int k = 2; k <= 2 * m + 1; ++k) f2m1 *= k;
    sinh_over[m] = 1.0L / f2m1;
    cosh_s[m] = 1.0L / f2m;
    (void)fact;
  }
  // g = cosh / (sinh/y), series division
  std::vector<long double> g(n, 0.0L);
  for (int m = 0; m < n; ++m) {
    long double acc = cosh_s[m];
    for (int k = 1; k <= m; ++k) acc -= sinh_over[k] * g[m - k];
    g[m] = acc;
  }
  // substitute y = x/2: multiply coefficient of y^{2m} by 4^{-m}
  for (int m = 0; m < n; ++m) g[m] /= std::pow(4.0L, m);
  // log of the series
  std::vector<long double> u(g);
  u[0] = 0.0L;
  std::vector<long double> out(n, 0.0L), upow(u);
  long double sign = 1.0L;
  for (int k = 1; k < n; ++k) {
    for (int m = 0; m < n; ++m) out[m] += sign * upow[m] / k;
    std::vector<long double> next(n, 0.0L);
    for (int i = 0; i < n; ++i)
      for (int j = 0; i + j < n; ++j) next[i + j] += upow[i] * u[j];
    upow = next;
    sign = -sign;
  }
  out.resize(mmax + 1);
  return out;
}

} // namespace

TEST_CASE("log series coefficients match the Bernoulli values and the oracle") {
  auto c = log_l_series_coeffs(6);
  // direct expansion: log(1 + x^2/12 - x^4/720 + ...) = x^2/12 - 23 x^4/5760*2 ...
  auto oracle = oracle_log_series(3);
  for (int m = 1; m <= 3; ++m) CHECK(c[m] == doctest::Approx(double(oracle[m])).epsilon(1e-13));
  CHECK(c[1] == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("l_form trivial cases") {
  auto ctx2 = make_form_context(2);
  FormMatrix zero = form_matrix_zero(ctx2, 2);
  Form l = l_form(zero);
  CHECK(l.coeff(0) == Complex{1.0, 0.0});
  CHECK(l.norm() == 1.0);

  // p = 2: any antisymmetric curvature gives exactly 1 (first correction has
  // form degree 4 > 2)
  Form f12 = Form::monomial(ctx2, 0b11, Complex(0.9, 0.4));
  FormMatrix r = form_matrix_zero(ctx2, 2);
  r[0][1] = f12;
  r[1][0] = -f12;
  Form l2 = l_form(r);
  CHECK(std::abs(l2.coeff(0) - 1.0) < 1e-15);
  CHECK(component(l2, 2).norm() < 1e-15);
}

TEST_CASE("l_form degree-4 part matches the series oracle on p = 4") {
  auto ctx = make_form_context(4);
  // block-diagonal antisymmetric R with two 2-form entries
  Form a = Form::monomial(ctx, 0b0011, Complex(0.6, 0.0)) +
           Form::monomial(ctx, 0b1100, Complex(-0.3, 0.2));
  Form b = Form::monomial(ctx, 0b0101, Complex(0.0, 0.8)) +
           Form::monomial(ctx, 0b1010, Complex(0.4, 0.0));
  FormMatrix r = form_matrix_zero(ctx, 4);
  r[0][1] = a;
  r[1][0] = -a;
  r[2][3] = b;
  r[3][2] = -b;
  Form l = l_form(r);
  // oracle: 1 + phi[ (c_1/2) tr R^2 ]'s degree-4 part with c_1 = 1/12
  Form tr_r2(ctx);
  tr_r2 += wedge(a, -a) * Complex(2.0, 0.0); // (R^2)_{00} + (R^2)_{11}
  tr_r2 += wedge(b, -b) * Complex(2.0, 0.0);
  Form expected = Form(ctx, 1.0) + phi_normalize(tr_r2 * Complex(0.5 / 12.0, 0.0));
  CHECK((l - expected).norm() < 1e-14);
  CHECK(l.coeff(0) == Complex{1.0, 0.0});
}

TEST_CASE("chern character") {
  auto ctx = make_form_context(2);
  // zero curvature of rank k
  FormMatrix zero = form_matrix_zero(ctx, 3);
  Form ch = chern_char(zero);
  CHECK(ch.coeff(0) == Complex{3.0, 0.0});
  CHECK(ch.norm() == 3.0);

  // rank-1 with R = theta dx1^dx2: 1 - (2 pi i)^{-1} theta dx1^dx2
  const Complex theta(0.7, -0.1);
  FormMatrix r1 = form_matrix_zero(ctx, 1);
  r1[0][0] = Form::monomial(ctx, 0b11, theta);
  Form ch1 = chern_char(r1);
  CHECK(std::abs(ch1.coeff(0) - 1.0) < 1e-15);
  const Complex expected = -theta / (kTwoPi * Complex(0, 1));
  CHECK(std::abs(ch1.coeff(0b11) - expected) < 1e-15);

  // additivity over direct sums
  FormMatrix r2 = form_matrix_zero(ctx, 1);
  r2[0][0] = Form::monomial(ctx, 0b11, Complex(-0.2, 0.5));
  FormMatrix sum = form_matrix_zero(ctx, 2);
  sum[0][0] = r1[0][0];
  sum[1][1] = r2[0][0];
  Form lhs = chern_char(sum);
  Form rhs = chern_char(r1) + chern_char(r2);
  CHECK((lhs - rhs).norm() < 1e-14);
}

TEST_CASE("base integration") {
  TorusGrid grid{2, 16};
  auto ctx = make_form_context(2);
  // constant c dx1^dx2 integrates to c (2 pi)^2
  const Complex c(1.3, -2.0);
  auto field_const = [&](const std::vector<double>&) { return Form::monomial(ctx, 0b11, c); };
  CHECK(std::abs(integrate_over_base(field_const, grid) - c * kTwoPi * kTwoPi) < 1e-12);

  // no top component: 0
  auto field_low = [&](const std::vector<double>&) {
    return Form(ctx, 5.0) + Form::generator(ctx, 1);
  };
  CHECK(std::abs(integrate_over_base(field_low, grid)) == 0.0);

  // oscillating coefficient integrates to zero at two resolutions
  auto field_osc = [&](const std::vector<double>& x) {
    return Form::monomial(ctx, 0b11, std::polar(1.0, x[0]));
  };
  CHECK(std::abs(integrate_over_base(field_osc, grid)) < 1e-12);
  TorusGrid fine{2, 32};
  CHECK(std::abs(integrate_over_base(field_osc, fine)) < 1e-12);
}

TEST_CASE("grid-doubling stability for trig integrands") {
  auto ctx = make_form_context(2);
  auto field = [&](const std::vector<double>& x) {
    const Complex val = 2.0 + std::cos(x[0]) * std::sin(2.0 * x[1]) + 0.3 * std::cos(3.0 * x[1]);
    return Form::monomial(ctx, 0b11, val);
  };
  TorusGrid g1{2, 16}, g2{2, 32};
  const Complex i1 = integrate_over_base(field, g1);
  const Complex i2 = integrate_over_base(field, g2);
  CHECK(std::abs(i1 - i2) <= 1e-10 * std::abs(i2));
}

TEST_CASE("l_form rejects non-antisymmetric input") {
  auto ctx = make_form_context(2);
  FormMatrix bad = form_matrix_zero(ctx, 2);
  bad[0][1] = Form::monomial(ctx, 0b11, 1.0);
  bad[1][0] = bad[0][1]; // symmetric instead of antisymmetric
  CHECK_THROWS_AS(l_form(bad), std::invalid_argument);
}
