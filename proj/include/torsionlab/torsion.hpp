#pragma once

#include <string>

#include "torsionlab/asymptotic.hpp"
#include "torsionlab/superconnection.hpp"

namespace torsionlab {

/// phi str[N D_t^2 e^{(1+r^2) D_t^2}] with D_t = omega/2 + (sqrt(t)/2)(v*-v).
Form integrand_torsion(const PointData& point, double t, double r);

/// phi str[t^{-1/2} D_{4t} ((v+v*) + i r (v*-v)) e^{(1+r^2) D_{4t}^2}], the
/// variant integrand; the sqrt(t)-derivative of the deformed superconnection
/// coefficient is the constant factor (v+v*) + i r (v*-v).
Form integrand_torsion_variant(const PointData& point, double t, double r);

/// phi str[N (1 + 2 D_u^2) e^{D_u^2}].
Form integrand_bl(const PointData& point, double u);

struct TorsionOptions {
  double fit_lo = 1e-4, fit_hi = 1e-2;
  int fit_samples = 32;
  // Half-integer ladder; the positive tail keeps analytic integrands modeled
  // to ~t^{7/2} so the singular-coefficient noise floor stays sharp.
  std::vector<double> exponents{-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  double lambda_min = 1.0; // spectral gap of (v+v*)^2, for decay rates
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
};

struct TorsionValue {
  Form value;
  AsymptoticFit fit;
  double tail_bound = 0.0;
  double quad_error = 0.0;
};

/// Torsion form at a point: zeta'(0) of the Mellin transform of the torsion
/// integrand, with D_t-scaling (factor sqrt(t)/2).
TorsionValue torsion_form(const PointData& point, double r, const TorsionOptions& opts = {});

/// Variant torsion form built from the D_{4t}-integrand with Mellin weight
/// t^s (one power of t softer than the torsion zeta).
TorsionValue torsion_form_variant(const PointData& point, double r,
                                  const TorsionOptions& opts = {});

/// Finite-dimensional torsion with the degree-0 counterterm
/// str[N](1 - u/2)e^{-u/4}:
///   -int_0^inf (phi str[N(1+2D_u^2)e^{D_u^2}] - counterterm) du/(2u).
/// Degree-0 contract: (1/2) sum_i (-1)^i i log det Delta_i.
TorsionValue bl_torsion(const PointData& point, const TorsionOptions& opts = {});

struct Dmz6Residual {
  Form lhs;       // -variant integrand (unnormalized by phi? both sides phi-normalized)
  Form rhs;       // -(2/t) phi str[N D_{4t}^2 e] + (i r/t) d phi str[N D_{4t} e]
  double residual = 0.0;
};

/// Pointwise identity between the variant integrand and the torsion
/// integrand plus an exact-form correction; d is computed spectrally.
Dmz6Residual check_dmz6(const FlatComplexSpec& spec, const TorusGrid& grid, long point_index,
                        double t, double r, FormContextPtr ctx);

struct Dmz7Comparison {
  std::vector<std::uint32_t> masks; // degree-i subsets
  std::vector<Complex> lhs;         // {T_r}^{[i]} components
  std::vector<Complex> rhs;         // factor * {T_BL}^{[i]} components
  double factor = 0.0;              // (i/(i+1)) (1+r^2)^{i/2-1}
  double max_abs_diff = 0.0;
  double max_component = 0.0;
  bool vacuous = true; // all magnitudes below 1e-12
};

/// Componentwise comparison {T_r}^{[i]} vs (i/(i+1))(1+r^2)^{i/2-1} {T}^{[i]}.
Dmz7Comparison check_dmz7(const PointData& point, double r, int degree,
                          const TorsionOptions& opts = {});

} // namespace torsionlab
