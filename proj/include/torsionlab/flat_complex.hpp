#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torsionlab/super_matrix.hpp"
#include "torsionlab/trig_poly.hpp"

namespace torsionlab {

/// Pointwise data of a flat cochain complex at a base point: differential,
/// its metric adjoint, metric, connection and adjoint-connection one-forms.
struct PointData {
  std::vector<double> x;
  GradedSpacePtr space;
  FormContextPtr ctx;
  Matrix v;
  Matrix vstar; // h^{-1} v^H h, blockwise E^{i+1} -> E^i
  Matrix h;
  std::vector<Matrix> gamma; // per axis; zero when no gauge field
  std::vector<Matrix> omega; // per axis; h^{-1}(dh - Gamma^H h - h Gamma)

  SuperElement gamma_form() const; // sum_a dx^a (x) Gamma_a
  SuperElement omega_form() const; // sum_a dx^a (x) omega_a
};

struct ValidationReport {
  double flatness_residual = 0.0;    // max |dGamma + Gamma ^ Gamma| over grid
  double differential_residual = 0.0; // max |dv + [Gamma, v]| over grid
  double h_min_eigenvalue = 0.0;
  long h_worst_point = -1;
  bool passed = false;
  std::string message;
};

/// Flat cochain complex over a flat torus: constant block differential v0,
/// Hermitian block-diagonal metric field h, optional block-diagonal gauge
/// field g. The connection is Gamma = g^{-1} dg (zero without g) and the
/// differential is v = g^{-1} v0 g, so flatness and [grad, v] = 0 hold by
/// construction and are re-checked spectrally.
class FlatComplexSpec {
public:
  FlatComplexSpec(std::vector<int> ranks, Matrix v0, TrigPolyField h,
                  std::optional<TrigPolyField> g, int base_dim);

  const GradedSpacePtr& space() const { return space_; }
  int base_dim() const { return p_; }
  const Matrix& v0() const { return v0_; }
  const TrigPolyField& h_field() const { return h_; }
  const std::optional<TrigPolyField>& g_field() const { return g_; }

  Matrix v_at(const std::vector<double>& x) const;
  Matrix h_at(const std::vector<double>& x) const;
  Matrix gamma_at(const std::vector<double>& x, int axis) const;

  PointData point_data(const std::vector<double>& x, FormContextPtr ctx) const;

  ValidationReport validate_flatness(const TorusGrid& grid, double tol = 1e-10) const;

  /// Min over the grid of the smallest eigenvalue of (v + v*)^2.
  double acyclicity_check(const TorusGrid& grid) const;

  static Matrix adjoint_of(const Matrix& v, const Matrix& h);

private:
  GradedSpacePtr space_;
  int p_;
  Matrix v0_;
  TrigPolyField h_;
  std::optional<TrigPolyField> g_;

  void check_structure() const;
};

/// Blockwise adjoint v* = h^{-1} v^H h (requires h positive definite).
Matrix adjoint_v(const Matrix& v, const Matrix& h);

/// JSON serialization of the complex-spec fixture format.
FlatComplexSpec load_complex_spec(const std::string& path);
void save_complex_spec(const FlatComplexSpec& spec, const std::string& path);
FlatComplexSpec parse_complex_spec(const std::string& json_text);

} // namespace torsionlab
