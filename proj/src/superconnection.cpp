#include "torsionlab/superconnection.hpp"

#include <cmath>
#include <stdexcept>

namespace torsionlab {

SuperElement d_u(const PointData& point, double u) {
  if (u < 0.0) throw std::invalid_argument("d_u: negative scale");
  SuperElement s = point.omega_form() * Complex(0.5, 0.0);
  const Matrix w = point.vstar - point.v;
  s += SuperElement::wrap(point.space, point.ctx, (0.5 * std::sqrt(u)) * w, 0);
  return s;
}

SuperElement c_u_coeff(const PointData& point, double u) {
  if (u < 0.0) throw std::invalid_argument("c_u_coeff: negative scale");
  SuperElement s = point.gamma_form() + point.omega_form() * Complex(0.5, 0.0);
  const Matrix w = point.v + point.vstar;
  s += SuperElement::wrap(point.space, point.ctx, (0.5 * std::sqrt(u)) * w, 0);
  return s;
}

SuperFieldOnGrid::SuperFieldOnGrid(TorusGrid grid, std::vector<SuperElement> values)
    : grid_(grid), values_(std::move(values)) {
  if (long(values_.size()) != grid_.total())
    throw std::invalid_argument("SuperFieldOnGrid: value count mismatch");
}

SuperFieldOnGrid SuperFieldOnGrid::sample(
    const TorusGrid& grid, const std::function<SuperElement(const std::vector<double>&)>& f) {
  std::vector<SuperElement> vals;
  vals.reserve(grid.total());
  for (long i = 0; i < grid.total(); ++i) vals.push_back(f(grid.point(i)));
  return SuperFieldOnGrid(grid, std::move(vals));
}

SuperFieldOnGrid SuperFieldOnGrid::axis_derivative(int axis) const {
  const int n = grid_.n;
  const Eigen::MatrixXd d = fourier_diff_matrix(n);
  std::vector<SuperElement> out(values_.size(),
                                SuperElement::zero(values_[0].space(), values_[0].context()));
  long stride = 1;
  for (int a = grid_.p - 1; a > axis; --a) stride *= n;
  const long total = grid_.total();
  const long block = stride * n;
  for (long base = 0; base < total; base += block)
    for (long off = 0; off < stride; ++off) {
      // line mean removed so constants differentiate to exact zero
      SuperElement mean = SuperElement::zero(values_[0].space(), values_[0].context());
      for (int l = 0; l < n; ++l) mean += values_[base + off + stride * l];
      mean = mean * Complex(1.0 / double(n), 0.0);
      for (int j = 0; j < n; ++j) {
        SuperElement acc = SuperElement::zero(values_[0].space(), values_[0].context());
        for (int l = 0; l < n; ++l) {
          const double w = d(j, l);
          if (w != 0.0) acc += (values_[base + off + stride * l] - mean) * Complex(w, 0.0);
        }
        out[base + off + stride * j] = acc;
      }
    }
  return SuperFieldOnGrid(grid_, std::move(out));
}

SuperFieldOnGrid SuperFieldOnGrid::exterior_derivative() const {
  const auto& space = values_[0].space();
  const auto& ctx = values_[0].context();
  std::vector<SuperElement> out(values_.size(), SuperElement::zero(space, ctx));
  for (int a = 0; a < grid_.p; ++a) {
    SuperFieldOnGrid da = axis_derivative(a);
    SuperElement dxa = SuperElement::wrap(space, ctx,
                                          Matrix::Identity(space->total(), space->total()),
                                          std::uint32_t{1} << a);
    for (long i = 0; i < long(values_.size()); ++i) out[i] += smul(dxa, da.at(i));
  }
  return SuperFieldOnGrid(grid_, std::move(out));
}

SuperElement curvature_c_u(const FlatComplexSpec& spec, const TorusGrid& grid, long point_index,
                           double u, FormContextPtr ctx) {
  SuperFieldOnGrid a_field = SuperFieldOnGrid::sample(grid, [&](const std::vector<double>& x) {
    return c_u_coeff(spec.point_data(x, ctx), u);
  });
  SuperFieldOnGrid da = a_field.exterior_derivative();
  const SuperElement& a = a_field.at(point_index);
  return da.at(point_index) + smul(a, a);
}

double IdentityResiduals::max() const {
  double m = curvature_vs_d2;
  m = std::max(m, bracket_c_d);
  m = std::max(m, deformed_square);
  m = std::max(m, deformed_square_d2);
  m = std::max(m, number_bracket_d);
  m = std::max(m, number_bracket_c);
  m = std::max(m, deformed_v_square);
  return m;
}

IdentityChecker::IdentityChecker(const FlatComplexSpec& spec, const TorusGrid& grid, double u,
                                 FormContextPtr ctx)
    : spec_(spec), grid_(grid), u_(u), ctx_(std::move(ctx)) {
  if (u <= 0.0) throw std::invalid_argument("check_identities: u must be positive");
  a_field_ = SuperFieldOnGrid::sample(grid, [&](const std::vector<double>& x) {
    return c_u_coeff(spec.point_data(x, ctx_), u);
  });
  d_field_ = SuperFieldOnGrid::sample(grid, [&](const std::vector<double>& x) {
    return d_u(spec.point_data(x, ctx_), u);
  });
  da_field_ = a_field_.exterior_derivative();
  dd_field_ = d_field_.exterior_derivative();
}

IdentityResiduals IdentityChecker::at(long point_index, double r) const {
  IdentityResiduals res;
  const SuperElement& a = a_field_.at(point_index);
  const SuperElement& d = d_field_.at(point_index);
  const SuperElement& da = da_field_.at(point_index);
  const SuperElement& dd = dd_field_.at(point_index);

  const SuperElement c2 = da + smul(a, a); // C_u^2
  const SuperElement d2 = smul(d, d);      // D_u^2

  res.curvature_vs_d2 = (c2 + d2).max_abs();
  res.bracket_c_d = (dd + smul(a, d) + smul(d, a)).max_abs();

  const Complex ir(0.0, r);
  const SuperElement adr = a + d * ir;
  const SuperElement deformed = (da + dd * ir) + smul(adr, adr); // (C_u + i r D_u)^2
  const double s = 1.0 + r * r;
  res.deformed_square = (deformed - c2 * Complex(s, 0.0)).max_abs();
  res.deformed_square_d2 = (deformed + d2 * Complex(s, 0.0)).max_abs();

  const PointData pd = spec_.point_data(grid_.point(point_index), ctx_);
  SuperElement nop = number_operator(pd.space, pd.ctx);
  const double inv_sqrt_u = 1.0 / std::sqrt(u_);
  SuperElement lhs1 = SuperElement::wrap(pd.space, pd.ctx, pd.v + pd.vstar, 0) +
                      supercommutator(nop, d) * Complex(2.0 * inv_sqrt_u, 0.0);
  res.number_bracket_d = lhs1.max_abs();
  SuperElement lhs2 = SuperElement::wrap(pd.space, pd.ctx, pd.vstar - pd.v, 0) +
                      supercommutator(nop, a) * Complex(2.0 * inv_sqrt_u, 0.0);
  res.number_bracket_c = lhs2.max_abs();

  const Matrix wd = Complex(1.0, -r) * pd.v + Complex(1.0, r) * pd.vstar;
  const Matrix wsq = (pd.v + pd.vstar) * (pd.v + pd.vstar);
  res.deformed_v_square = (wd * wd - s * wsq).cwiseAbs().maxCoeff();
  return res;
}

IdentityResiduals check_identities(const FlatComplexSpec& spec, const TorusGrid& grid,
                                   long point_index, double u, double r, FormContextPtr ctx) {
  IdentityChecker checker(spec, grid, u, std::move(ctx));
  return checker.at(point_index, r);
}

} // namespace torsionlab
