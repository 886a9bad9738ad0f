#pragma once

#include "torsionlab/flat_complex.hpp"

namespace torsionlab {

/// Odd part of the rescaled superconnection pair:
/// D_u = omega/2 + (sqrt(u)/2)(v* - v).
SuperElement d_u(const PointData& point, double u);

/// Local coefficient of the superconnection C_u = d + A_u:
/// A_u = Gamma + omega/2 + (sqrt(u)/2)(v + v*).
SuperElement c_u_coeff(const PointData& point, double u);

/// SuperElement-valued field on a torus grid with a spectral exterior
/// derivative; the backbone for curvature and identity checks.
class SuperFieldOnGrid {
public:
  SuperFieldOnGrid() = default;
  SuperFieldOnGrid(TorusGrid grid, std::vector<SuperElement> values);

  static SuperFieldOnGrid sample(const TorusGrid& grid,
                                 const std::function<SuperElement(const std::vector<double>&)>& f);

  const TorusGrid& grid() const { return grid_; }
  const SuperElement& at(long i) const { return values_[i]; }

  SuperFieldOnGrid axis_derivative(int axis) const;
  /// d F = sum_a dx^a ^ (d_a F), as a SuperElement field.
  SuperFieldOnGrid exterior_derivative() const;

private:
  TorusGrid grid_;
  std::vector<SuperElement> values_;
};

/// Curvature C_u^2 = dA_u + A_u A_u with dA_u evaluated spectrally at the
/// grid point of the given flattened index.
SuperElement curvature_c_u(const FlatComplexSpec& spec, const TorusGrid& grid, long point_index,
                           double u, FormContextPtr ctx);

struct IdentityResiduals {
  double curvature_vs_d2 = 0.0;      // C_u^2 + D_u^2
  double bracket_c_d = 0.0;          // dD_u + [A_u, D_u]
  double deformed_square = 0.0;      // (C_u + i r D_u)^2 - (1+r^2) C_u^2
  double deformed_square_d2 = 0.0;   // (C_u + i r D_u)^2 + (1+r^2) D_u^2
  double number_bracket_d = 0.0;     // v + v* + 2 u^{-1/2} [N, D_u]
  double number_bracket_c = 0.0;     // v* - v + 2 u^{-1/2} [N, A_u]
  double deformed_v_square = 0.0;    // ((1-ir)v + (1+ir)v*)^2 - (1+r^2)(v+v*)^2
  double max() const;
};

IdentityResiduals check_identities(const FlatComplexSpec& spec, const TorusGrid& grid,
                                   long point_index, double u, double r, FormContextPtr ctx);

/// Precomputes the superconnection fields and their spectral derivatives for
/// one (spec, grid, u), so identity residuals at many (point, r) pairs reuse
/// the sampling.
class IdentityChecker {
public:
  IdentityChecker(const FlatComplexSpec& spec, const TorusGrid& grid, double u,
                  FormContextPtr ctx);
  IdentityResiduals at(long point_index, double r) const;

private:
  const FlatComplexSpec& spec_;
  TorusGrid grid_;
  double u_;
  FormContextPtr ctx_;
  SuperFieldOnGrid a_field_, d_field_, da_field_, dd_field_;
};

} // namespace torsionlab
