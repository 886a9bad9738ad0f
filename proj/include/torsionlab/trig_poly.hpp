#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace torsionlab {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Uniform periodic grid on the torus [0, 2*pi)^p, n points per axis.
struct TorusGrid {
  int p = 2;
  int n = 32;

  long total() const {
    long t = 1;
    for (int a = 0; a < p; ++a) t *= n;
    return t;
  }
  /// Coordinates of the flattened grid index (row-major, axis 0 slowest).
  std::vector<double> point(long index) const;
  std::vector<int> indices(long index) const;
  long flatten(const std::vector<int>& idx) const;
};

/// Matrix-valued trigonometric polynomial on the torus: a finite wave-vector
/// table k -> c_k, evaluated as sum_k c_k e^{i k.x}. Derivatives are exact
/// (coefficient multiplication by i k_a).
class TrigPolyField {
public:
  struct Mode {
    std::vector<int> k;
    Matrix c;
  };

  TrigPolyField() = default;
  TrigPolyField(int axes, int rows, int cols);

  int axes() const { return axes_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int max_order() const; // |k|_inf over stored modes

  /// Adds (or accumulates into) the coefficient of e^{i k.x}.
  void add_mode(const std::vector<int>& k, const Matrix& c);
  const std::vector<Mode>& modes() const { return modes_; }

  Matrix eval(const std::vector<double>& x) const;
  Matrix eval_derivative(const std::vector<double>& x, int axis) const;

  /// Coefficient pairing c(-k) = c(k)^H required of Hermitian-valued fields.
  bool is_hermitian_paired(double tol = 1e-12) const;
  /// Max over modes of the pairing defect.
  double hermitian_defect() const;

  static TrigPolyField constant(int axes, const Matrix& c);

private:
  int axes_ = 0, rows_ = 0, cols_ = 0;
  std::vector<Mode> modes_;
};

/// Fourier differentiation matrix for n (even) equispaced points on [0, 2*pi):
/// exact on trigonometric polynomials of order < n/2.
Eigen::MatrixXd fourier_diff_matrix(int n);

/// A matrix-valued field sampled on a TorusGrid, with spectral calculus.
class GridField {
public:
  GridField() = default;
  GridField(TorusGrid grid, int rows, int cols);

  static GridField sample(const TorusGrid& grid,
                          const std::function<Matrix(const std::vector<double>&)>& f);

  const TorusGrid& grid() const { return grid_; }
  const Matrix& at(long index) const { return data_[index]; }
  Matrix& at(long index) { return data_[index]; }

  GridField axis_derivative(int axis) const;
  double max_abs() const;

  /// Fourier coefficient c_m = (1/n^p) sum_x F(x) e^{-i m.x}.
  Matrix fourier_coefficient(const std::vector<int>& m) const;

private:
  TorusGrid grid_;
  int rows_ = 0, cols_ = 0;
  std::vector<Matrix> data_;
};

/// All Fourier coefficients with |m|_inf <= K of a p=2 grid field, as a
/// (2K+1)^2 table indexed by [m1+K][m2+K]. Separable transform.
std::vector<std::vector<Matrix>> fourier_window_2d(const GridField& f, int K);

} // namespace torsionlab
