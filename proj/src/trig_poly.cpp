#include "torsionlab/trig_poly.hpp"

#include <cmath>
#include <stdexcept>

namespace torsionlab {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

std::vector<int> TorusGrid::indices(long index) const {
  std::vector<int> idx(p);
  for (int a = p - 1; a >= 0; --a) {
    idx[a] = int(index % n);
    index /= n;
  }
  return idx;
}

std::vector<double> TorusGrid::point(long index) const {
  auto idx = indices(index);
  std::vector<double> x(p);
  for (int a = 0; a < p; ++a) x[a] = 2.0 * kPi * double(idx[a]) / double(n);
  return x;
}

long TorusGrid::flatten(const std::vector<int>& idx) const {
  long f = 0;
  for (int a = 0; a < p; ++a) {
    int v = idx[a] % n;
    if (v < 0) v += n;
    f = f * n + v;
  }
  return f;
}

TrigPolyField::TrigPolyField(int axes, int rows, int cols)
    : axes_(axes), rows_(rows), cols_(cols) {}

int TrigPolyField::max_order() const {
  int k = 0;
  for (const auto& m : modes_)
    for (int a = 0; a < axes_; ++a) k = std::max(k, std::abs(m.k[a]));
  return k;
}

void TrigPolyField::add_mode(const std::vector<int>& k, const Matrix& c) {
  if (int(k.size()) != axes_) throw std::invalid_argument("TrigPolyField: wave vector size");
  if (c.rows() != rows_ || c.cols() != cols_)
    throw std::invalid_argument("TrigPolyField: coefficient size");
  for (auto& m : modes_) {
    if (m.k == k) {
      m.c += c;
      return;
    }
  }
  modes_.push_back({k, c});
}

Matrix TrigPolyField::eval(const std::vector<double>& x) const {
  Matrix r = Matrix::Zero(rows_, cols_);
  for (const auto& m : modes_) {
    double phase = 0.0;
    for (int a = 0; a < axes_; ++a) phase += m.k[a] * x[a];
    r += m.c * std::polar(1.0, phase);
  }
  return r;
}

Matrix TrigPolyField::eval_derivative(const std::vector<double>& x, int axis) const {
  Matrix r = Matrix::Zero(rows_, cols_);
  for (const auto& m : modes_) {
    double phase = 0.0;
    for (int a = 0; a < axes_; ++a) phase += m.k[a] * x[a];
    r += m.c * (Complex(0.0, double(m.k[axis])) * std::polar(1.0, phase));
  }
  return r;
}

double TrigPolyField::hermitian_defect() const {
  double defect = 0.0;
  for (const auto& m : modes_) {
    std::vector<int> neg(m.k.size());
    for (std::size_t a = 0; a < m.k.size(); ++a) neg[a] = -m.k[a];
    Matrix partner = Matrix::Zero(rows_, cols_);
    for (const auto& o : modes_)
      if (o.k == neg) partner = o.c;
    defect = std::max(defect, (partner - m.c.adjoint()).cwiseAbs().maxCoeff());
  }
  return defect;
}

bool TrigPolyField::is_hermitian_paired(double tol) const { return hermitian_defect() <= tol; }

TrigPolyField TrigPolyField::constant(int axes, const Matrix& c) {
  TrigPolyField f(axes, int(c.rows()), int(c.cols()));
  f.add_mode(std::vector<int>(axes, 0), c);
  return f;
}

Eigen::MatrixXd fourier_diff_matrix(int n) {
  if (n % 2 != 0 || n < 2) throw std::invalid_argument("fourier_diff_matrix: n must be even");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      if (j == l) continue;
      const int diff = j - l;
      const double sign = (diff % 2 == 0) ? 1.0 : -1.0;
      d(j, l) = 0.5 * sign / std::tan(double(diff) * kPi / double(n));
    }
  return d;
}

GridField::GridField(TorusGrid grid, int rows, int cols)
    : grid_(grid), rows_(rows), cols_(cols) {
  data_.assign(grid_.total(), Matrix::Zero(rows, cols));
}

GridField GridField::sample(const TorusGrid& grid,
                            const std::function<Matrix(const std::vector<double>&)>& f) {
  Matrix first = f(grid.point(0));
  GridField g(grid, int(first.rows()), int(first.cols()));
  g.data_[0] = first;
  for (long i = 1; i < grid.total(); ++i) g.data_[i] = f(grid.point(i));
  return g;
}

GridField GridField::axis_derivative(int axis) const {
  const int n = grid_.n;
  const Eigen::MatrixXd d = fourier_diff_matrix(n);
  GridField out(grid_, rows_, cols_);
  // stride of the axis in the flattened layout (axis 0 slowest)
  long stride = 1;
  for (int a = grid_.p - 1; a > axis; --a) stride *= n;
  const long total = grid_.total();
  const long block = stride * n; // span of one axis line bundle
  for (long base = 0; base < total; base += block) {
    for (long off = 0; off < stride; ++off) {
      // One periodic line along `axis`. Subtracting the line mean makes the
      // derivative of constants exactly zero (the mean is annihilated
      // analytically, so this only removes roundoff).
      Matrix mean = Matrix::Zero(rows_, cols_);
      for (int l = 0; l < n; ++l) mean += data_[base + off + stride * l];
      mean /= double(n);
      for (int j = 0; j < n; ++j) {
        Matrix acc = Matrix::Zero(rows_, cols_);
        for (int l = 0; l < n; ++l) {
          const double w = d(j, l);
          if (w != 0.0) acc += w * (data_[base + off + stride * l] - mean);
        }
        out.data_[base + off + stride * j] = acc;
      }
    }
  }
  return out;
}

double GridField::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

std::vector<std::vector<Matrix>> fourier_window_2d(const GridField& f, int K) {
  const TorusGrid& g = f.grid();
  if (g.p != 2) throw std::invalid_argument("fourier_window_2d: p=2 only");
  const int n = g.n;
  const int w = 2 * K + 1;
  const int rows = int(f.at(0).rows()), cols = int(f.at(0).cols());
  // A(x, m+K) = e^{-i m x_j}; coefficients = A^T P A / n^2 per entry plane.
  Matrix a(n, w);
  for (int j = 0; j < n; ++j)
    for (int m = -K; m <= K; ++m)
      a(j, m + K) = std::polar(1.0, -2.0 * kPi * double(j) * double(m) / double(n));
  std::vector<std::vector<Matrix>> out(w, std::vector<Matrix>(w, Matrix::Zero(rows, cols)));
  Matrix plane(n, n);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < n; ++j2) plane(j1, j2) = f.at(long(j1) * n + j2)(r, c);
      Matrix coef = a.transpose() * plane * a / double(long(n) * n);
      for (int m1 = 0; m1 < w; ++m1)
        for (int m2 = 0; m2 < w; ++m2) out[m1][m2](r, c) = coef(m1, m2);
    }
  return out;
}

Matrix GridField::fourier_coefficient(const std::vector<int>& m) const {
  Matrix acc = Matrix::Zero(rows_, cols_);
  const long total = grid_.total();
  for (long i = 0; i < total; ++i) {
    const auto x = grid_.point(i);
    double phase = 0.0;
    for (int a = 0; a < grid_.p; ++a) phase += m[a] * x[a];
    acc += data_[i] * std::polar(1.0, -phase);
  }
  return acc / double(total);
}

} // namespace torsionlab
