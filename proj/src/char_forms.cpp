#include "torsionlab/char_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace torsionlab {

namespace {
constexpr double kTwoPi = 6.28318530717958647692528676655900577;

int matrix_size(const FormMatrix& a) {
  const int n = int(a.size());
  for (const auto& row : a)
    if (int(row.size()) != n) throw std::invalid_argument("FormMatrix must be square");
  return n;
}
} // namespace

FormMatrix form_matrix_zero(FormContextPtr ctx, int n) {
  return FormMatrix(n, std::vector<Form>(n, Form(ctx)));
}

FormMatrix form_matrix_product(const FormMatrix& a, const FormMatrix& b) {
  const int n = matrix_size(a);
  if (matrix_size(b) != n) throw std::invalid_argument("FormMatrix product: size mismatch");
  FormMatrix r = form_matrix_zero(a[0][0].context(), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) r[i][j] += wedge(a[i][k], b[k][j]);
  return r;
}

Form form_matrix_trace(const FormMatrix& a) {
  const int n = matrix_size(a);
  Form t(a[0][0].context());
  for (int i = 0; i < n; ++i) t += a[i][i];
  return t;
}

std::vector<double> log_l_series_coeffs(int max_power_of_x) {
  // Bernoulli numbers B_0, B_2, ..., enough for x^{2m} with 2m <= max power.
  static const double bernoulli[] = {1.0,        1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0,
                                     -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0};
  const int mmax = max_power_of_x / 2;
  if (mmax + 1 > int(sizeof(bernoulli) / sizeof(double)))
    throw std::invalid_argument("log_l_series_coeffs: order too large");
  // g(x) = sum_m B_{2m} x^{2m} / (2m)! ; take log as a formal series in x^2.
  std::vector<double> g(mmax + 1, 0.0);
  double fact = 1.0;
  for (int m = 0; m <= mmax; ++m) {
    if (m > 0) fact *= double(2 * m - 1) * double(2 * m);
    g[m] = bernoulli[m] / fact;
  }
  // log(1 + u) with u = g - 1: series in the x^2 grading.
  std::vector<double> u(g);
  u[0] = 0.0;
  std::vector<double> out(mmax + 1, 0.0);
  std::vector<double> upow(u); // u^1
  double sign = 1.0;
  for (int k = 1; k <= mmax; ++k) {
    for (int m = 0; m <= mmax; ++m) out[m] += sign * upow[m] / double(k);
    // upow <- upow * u (truncated convolution in the x^2 grading)
    std::vector<double> next(mmax + 1, 0.0);
    for (int i = 0; i <= mmax; ++i)
      for (int j = 0; i + j <= mmax; ++j) next[i + j] += upow[i] * u[j];
    upow = std::move(next);
    sign = -sign;
  }
  out[0] = 0.0;
  return out;
}

Form l_form(const FormMatrix& r_tb) {
  const int n = matrix_size(r_tb);
  const FormContextPtr ctx = r_tb[0][0].context();
  const int p = ctx->generators();
  // Antisymmetry and pure degree 2 of the input.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if ((r_tb[i][j] + r_tb[j][i]).norm() > 1e-12 * std::max(1.0, r_tb[i][j].norm()))
        throw std::invalid_argument("l_form: curvature matrix must be antisymmetric");
    }
  const auto coeffs = log_l_series_coeffs(p);
  // log-series evaluated on the nilpotent matrix of 2-forms: powers R^{2m}
  // carry form degree 4m, truncated beyond p.
  Form half_tr_log(ctx);
  FormMatrix rpow = form_matrix_product(r_tb, r_tb); // R^2, form degree 4
  for (int m = 1; 4 * m <= p; ++m) {
    if (coeffs[m] != 0.0) half_tr_log += Complex(0.5 * coeffs[m], 0.0) * form_matrix_trace(rpow);
    if (4 * (m + 1) <= p)
      rpow = form_matrix_product(rpow, form_matrix_product(r_tb, r_tb));
  }
  // exp of a nilpotent form of degree >= 4.
  Form result(ctx, 1.0);
  Form term(ctx, 1.0);
  for (int k = 1; 4 * k <= p; ++k) {
    term = wedge(term, half_tr_log) * Complex(1.0 / double(k), 0.0);
    result += term;
  }
  return phi_normalize(result);
}

Form chern_char(const FormMatrix& r_mu) {
  const int n = matrix_size(r_mu);
  const FormContextPtr ctx = r_mu[0][0].context();
  const int p = ctx->generators();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (std::uint32_t m = 0; m < (1u << p); ++m)
        if (popcount(m) != 2 && r_mu[i][j].coeff(m) != Complex{0.0, 0.0})
          throw std::invalid_argument("chern_char: curvature entries must be pure degree 2");
  // exp(-R) summed exactly: R^k has degree 2k.
  FormMatrix acc = form_matrix_zero(ctx, n);
  for (int i = 0; i < n; ++i) acc[i][i] = Form(ctx, 1.0);
  FormMatrix power = acc; // R^0
  double fact = 1.0;
  for (int k = 1; 2 * k <= p; ++k) {
    power = form_matrix_product(power, r_mu);
    fact *= double(k);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc[i][j] += Complex(sign / fact, 0.0) * power[i][j];
  }
  return phi_normalize(form_matrix_trace(acc));
}

Complex integrate_over_base(const std::function<Form(const std::vector<double>&)>& field,
                            const TorusGrid& grid) {
  if (grid.total() <= 0) throw std::invalid_argument("integrate_over_base: empty grid");
  const std::uint32_t top = (std::uint32_t{1} << grid.p) - 1;
  Complex acc = 0.0;
  for (long i = 0; i < grid.total(); ++i) acc += field(grid.point(i)).coeff(top);
  double cell = 1.0;
  for (int a = 0; a < grid.p; ++a) cell *= kTwoPi / double(grid.n);
  return acc * cell;
}

} // namespace torsionlab
