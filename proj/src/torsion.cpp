#include "torsionlab/torsion.hpp"

#include <cmath>
#include <stdexcept>

namespace torsionlab {

namespace {

Eigen::VectorXcd form_to_eigen(const Form& f) {
  Eigen::VectorXcd v(f.size());
  for (std::uint32_t m = 0; m < f.size(); ++m) v(m) = f.coeff(m);
  return v;
}

Form eigen_to_form(FormContextPtr ctx, const Eigen::VectorXcd& v) {
  Form f(ctx);
  for (std::uint32_t m = 0; m < f.size(); ++m) f.coeff(m) = v(m);
  return f;
}

} // namespace

Form integrand_torsion(const PointData& point, double t, double r) {
  if (t <= 0.0) throw std::invalid_argument("integrand_torsion: t must be positive");
  const SuperElement d = d_u(point, t);
  const SuperElement d2 = smul(d, d);
  const SuperElement expo = superexp(d2 * Complex(1.0 + r * r, 0.0));
  const SuperElement n = number_operator(point.space, point.ctx);
  return phi_normalize(supertrace(smul(n, smul(d2, expo))));
}

Form integrand_torsion_variant(const PointData& point, double t, double r) {
  if (t <= 0.0) throw std::invalid_argument("integrand_torsion_variant: t must be positive");
  const SuperElement d4 = d_u(point, 4.0 * t);
  const SuperElement d4sq = smul(d4, d4);
  const SuperElement expo = superexp(d4sq * Complex(1.0 + r * r, 0.0));
  const Matrix w = (point.v + point.vstar) + Complex(0.0, r) * (point.vstar - point.v);
  const SuperElement wel = SuperElement::wrap(point.space, point.ctx, w, 0);
  const SuperElement prod = smul(d4, smul(wel, expo)) * Complex(1.0 / std::sqrt(t), 0.0);
  return phi_normalize(supertrace(prod));
}

Form integrand_bl(const PointData& point, double u) {
  if (u <= 0.0) throw std::invalid_argument("integrand_bl: u must be positive");
  const SuperElement d = d_u(point, u);
  const SuperElement d2 = smul(d, d);
  const SuperElement expo = superexp(d2);
  const SuperElement n = number_operator(point.space, point.ctx);
  SuperElement arg = smul(n, expo) + smul(n, smul(d2, expo)) * Complex(2.0, 0.0);
  return phi_normalize(supertrace(arg));
}

TorsionValue torsion_form(const PointData& point, double r, const TorsionOptions& opts) {
  auto f = [&](double t) { return form_to_eigen(integrand_torsion(point, t, r)); };
  AsymptoticFit fit = fit_asymptotics(f, opts.fit_lo, opts.fit_hi, opts.fit_samples,
                                      opts.exponents);
  RegularizedIntegralOptions ropts;
  ropts.decay_rate = 0.25 * (1.0 + r * r) * opts.lambda_min;
  ropts.abs_tol = opts.abs_tol;
  ropts.rel_tol = opts.rel_tol;
  RegularizedIntegral reg = regularized_time_integral(f, fit, ropts);
  TorsionValue out;
  out.value = eigen_to_form(point.ctx, reg.value);
  out.fit = std::move(fit);
  out.tail_bound = reg.tail_bound;
  out.quad_error = reg.quad_error;
  return out;
}

TorsionValue torsion_form_variant(const PointData& point, double r, const TorsionOptions& opts) {
  // Mellin weight t^s on the variant integrand g equals weight t^{s-1} on
  // t g(t), so the standard machinery applies to f~ = t g.
  auto f = [&](double t) {
    return (t * form_to_eigen(integrand_torsion_variant(point, t, r))).eval();
  };
  AsymptoticFit fit = fit_asymptotics(f, opts.fit_lo, opts.fit_hi, opts.fit_samples,
                                      opts.exponents);
  RegularizedIntegralOptions ropts;
  ropts.decay_rate = (1.0 + r * r) * opts.lambda_min; // D_{4t} decays 4x faster
  ropts.abs_tol = opts.abs_tol;
  ropts.rel_tol = opts.rel_tol;
  RegularizedIntegral reg = regularized_time_integral(f, fit, ropts);
  TorsionValue out;
  out.value = eigen_to_form(point.ctx, reg.value);
  out.fit = std::move(fit);
  out.tail_bound = reg.tail_bound;
  out.quad_error = reg.quad_error;
  return out;
}

TorsionValue bl_torsion(const PointData& point, const TorsionOptions& opts) {
  const Complex str_n = form_to_eigen(supertrace(number_operator(point.space, point.ctx)))(0);
  auto counterterm = [&](double u) { return str_n * (1.0 - 0.5 * u) * std::exp(-0.25 * u); };
  auto f = [&](double u) {
    Eigen::VectorXcd v = form_to_eigen(integrand_bl(point, u));
    v(0) -= counterterm(u);
    return v;
  };
  // The counterterm makes the integrand O(u) at u -> 0 in every component,
  // so -int_0^inf f du/(2u) converges; integrate in w = sqrt(u).
  const double u_lo = 1e-10, u_split = 1.0;
  auto small_integrand = [&](double w) { return ((1.0 / w) * f(w * w)).eval(); };
  QuadResult q1 = integrate_adaptive(small_integrand, std::sqrt(u_lo), std::sqrt(u_split),
                                     opts.abs_tol, opts.rel_tol, 4000);
  const double u_max = std::max(8.0, 160.0 / std::max(opts.lambda_min * 0.25, 1e-8));
  auto large_integrand = [&](double u) { return ((0.5 / u) * f(u)).eval(); };
  QuadResult q2 = integrate_adaptive_log(large_integrand, u_split, u_max, opts.abs_tol,
                                         opts.rel_tol, 4000);
  TorsionValue out;
  out.value = eigen_to_form(point.ctx, -(q1.value + q2.value));
  out.quad_error = q1.error_estimate + q2.error_estimate;
  out.tail_bound = f(u_max).cwiseAbs().maxCoeff() / (0.25 * opts.lambda_min * u_max + 1.0);
  return out;
}

Dmz6Residual check_dmz6(const FlatComplexSpec& spec, const TorusGrid& grid, long point_index,
                        double t, double r, FormContextPtr ctx) {
  Dmz6Residual out;
  const PointData pd = spec.point_data(grid.point(point_index), ctx);
  out.lhs = -integrand_torsion_variant(pd, t, r);

  // -(2/t) phi str[N D_{4t}^2 e^{(1+r^2) D_{4t}^2}]
  auto torsion_4t = [&](const PointData& p) {
    const SuperElement d4 = d_u(p, 4.0 * t);
    const SuperElement d4sq = smul(d4, d4);
    const SuperElement expo = superexp(d4sq * Complex(1.0 + r * r, 0.0));
    const SuperElement n = number_operator(p.space, p.ctx);
    return phi_normalize(supertrace(smul(n, smul(d4sq, expo))));
  };
  Form rhs = torsion_4t(pd) * Complex(-2.0 / t, 0.0);

  if (r != 0.0) {
    // (i r / t) d phi str[N D_{4t} e^{(1+r^2) D_{4t}^2}], spectrally.
    auto one_form_field = [&](const std::vector<double>& x) {
      const PointData p = spec.point_data(x, ctx);
      const SuperElement d4 = d_u(p, 4.0 * t);
      const SuperElement expo = superexp(smul(d4, d4) * Complex(1.0 + r * r, 0.0));
      const SuperElement n = number_operator(p.space, p.ctx);
      return phi_normalize(supertrace(smul(n, smul(d4, expo))));
    };
    // Sample the Form field, differentiate each axis spectrally, wedge dx^a.
    std::vector<Form> field;
    field.reserve(grid.total());
    for (long i = 0; i < grid.total(); ++i) field.push_back(one_form_field(grid.point(i)));
    const int n = grid.n;
    const Eigen::MatrixXd dmat = fourier_diff_matrix(n);
    Form dsum(ctx);
    for (int a = 0; a < grid.p; ++a) {
      long stride = 1;
      for (int b = grid.p - 1; b > a; --b) stride *= n;
      // derivative of the field along axis a at point_index
      const auto idx = grid.indices(point_index);
      Form da(ctx);
      for (int l = 0; l < n; ++l) {
        auto idx_l = idx;
        idx_l[a] = l;
        const double w = dmat(idx[a], l);
        if (w != 0.0) da += field[grid.flatten(idx_l)] * Complex(w, 0.0);
      }
      dsum += wedge(Form::generator(ctx, a + 1), da);
    }
    rhs += dsum * Complex(0.0, r / t);
  }
  out.rhs = rhs;
  out.residual = (out.lhs - out.rhs).norm();
  return out;
}

Dmz7Comparison check_dmz7(const PointData& point, double r, int degree,
                          const TorsionOptions& opts) {
  if (degree <= 0 || degree % 2 != 0 || degree > point.ctx->generators())
    throw std::invalid_argument("check_dmz7: degree must be even and within the base dimension");
  Dmz7Comparison out;
  const TorsionValue tr = torsion_form(point, r, opts);
  const TorsionValue tbl = bl_torsion(point, opts);
  out.factor = (double(degree) / double(degree + 1)) *
               std::pow(1.0 + r * r, 0.5 * double(degree) - 1.0);
  for (std::uint32_t m = 0; m < tr.value.size(); ++m) {
    if (popcount(m) != degree) continue;
    out.masks.push_back(m);
    const Complex lhs = tr.value.coeff(m);
    const Complex rhs = out.factor * tbl.value.coeff(m);
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
    out.max_abs_diff = std::max(out.max_abs_diff, std::abs(lhs - rhs));
    out.max_component = std::max({out.max_component, std::abs(lhs), std::abs(rhs)});
  }
  out.vacuous = out.max_component < 1e-12;
  return out;
}

} // namespace torsionlab
