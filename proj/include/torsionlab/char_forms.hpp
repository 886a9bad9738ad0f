#pragma once

#include <functional>
#include <vector>

#include "torsionlab/exterior_algebra.hpp"
#include "torsionlab/trig_poly.hpp"

namespace torsionlab {

/// Square matrix whose entries are Forms (used for curvature input).
using FormMatrix = std::vector<std::vector<Form>>;

FormMatrix form_matrix_zero(FormContextPtr ctx, int n);
FormMatrix form_matrix_product(const FormMatrix& a, const FormMatrix& b);
Form form_matrix_trace(const FormMatrix& a);

/// Coefficients c_2, c_4, ... of log((x/2) coth(x/2)) as an even power
/// series, generated from the Bernoulli expansion
/// (x/2) coth(x/2) = sum_n B_{2n} x^{2n} / (2n)!. Index m holds the x^{2m}
/// coefficient (m >= 1; the constant term vanishes).
std::vector<double> log_l_series_coeffs(int max_power_of_x);

/// Hirzebruch-type characteristic form from an antisymmetric curvature
/// matrix of 2-forms, normalized so the degree-0 part is 1:
/// phi exp((1/2) tr log((R/2) coth(R/2))).
Form l_form(const FormMatrix& r_tb);

/// Chern character form phi Tr[exp(-R_mu)].
Form chern_char(const FormMatrix& r_mu);

/// Integrates the top-degree coefficient of a Form-valued field over the
/// torus (trapezoidal rule, spectrally exact for trig polynomials).
Complex integrate_over_base(const std::function<Form(const std::vector<double>&)>& field,
                            const TorusGrid& grid);

} // namespace torsionlab
