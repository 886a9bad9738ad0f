#include <doctest.h>

#include <cmath>

#include "torsionlab/trig_poly.hpp"

using namespace torsionlab;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

TEST_CASE("single-mode spectral derivative is exact") {
  TrigPolyField f(2, 1, 1);
  Matrix c(1, 1);
  c(0, 0) = Complex(0.7, -0.2);
  f.add_mode({2, -1}, c);
  const std::vector<double> x{0.3, 1.1};
  const Complex phase = std::polar(1.0, 2.0 * x[0] - x[1]);
  CHECK(std::abs(f.eval(x)(0, 0) - c(0, 0) * phase) < 1e-15);
  CHECK(std::abs(f.eval_derivative(x, 0)(0, 0) - Complex(0, 2) * c(0, 0) * phase) < 1e-12);
  CHECK(std::abs(f.eval_derivative(x, 1)(0, 0) - Complex(0, -1) * c(0, 0) * phase) < 1e-12);
}

TEST_CASE("hermitian pairing detection") {
  TrigPolyField f(2, 2, 2);
  Matrix a(2, 2);
  a << Complex(1, 0), Complex(0.5, 0.25), Complex(0.5, -0.25), Complex(2, 0);
  f.add_mode({0, 0}, a);
  Matrix b(2, 2);
  b << Complex(0.1, 0.2), Complex(0, 0.3), Complex(-0.2, 0), Complex(0.4, -0.1);
  f.add_mode({1, 0}, b);
  f.add_mode({-1, 0}, b.adjoint());
  CHECK(f.is_hermitian_paired(1e-14));
  TrigPolyField g(2, 2, 2);
  g.add_mode({1, 0}, b);
  CHECK(!g.is_hermitian_paired(1e-14));
}

TEST_CASE("fourier differentiation matrix is exact on trig polynomials") {
  const int n = 16;
  const Eigen::MatrixXd d = fourier_diff_matrix(n);
  for (int mode = -5; mode <= 5; ++mode) {
    Eigen::VectorXcd v(n), dv(n);
    for (int j = 0; j < n; ++j) {
      const double x = 2.0 * kPi * j / n;
      v(j) = std::polar(1.0, mode * x);
      dv(j) = Complex(0.0, double(mode)) * v(j);
    }
    const Eigen::VectorXcd got = d.cast<Complex>() * v;
    CHECK((got - dv).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("grid field axis derivative matches exact field derivative") {
  TrigPolyField f(2, 2, 2);
  Matrix c0 = Matrix::Identity(2, 2);
  f.add_mode({0, 0}, c0);
  Matrix c1(2, 2);
  c1 << Complex(0.2, 0.1), Complex(0, 0.4), Complex(-0.3, 0), Complex(0.1, -0.2);
  f.add_mode({1, 2}, c1);
  f.add_mode({-1, -2}, c1.adjoint());
  TorusGrid grid{2, 16};
  GridField sampled =
      GridField::sample(grid, [&](const std::vector<double>& x) { return f.eval(x); });
  for (int axis = 0; axis < 2; ++axis) {
    GridField d = sampled.axis_derivative(axis);
    double worst = 0.0;
    for (long i = 0; i < grid.total(); ++i)
      worst = std::max(worst,
                       (d.at(i) - f.eval_derivative(grid.point(i), axis)).cwiseAbs().maxCoeff());
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("fourier window recovers trig coefficients") {
  TrigPolyField f(2, 1, 1);
  Matrix a(1, 1), b(1, 1);
  a(0, 0) = Complex(0.3, -0.7);
  b(0, 0) = Complex(-0.1, 0.2);
  f.add_mode({1, 0}, a);
  f.add_mode({-2, 3}, b);
  TorusGrid grid{2, 16};
  GridField sampled =
      GridField::sample(grid, [&](const std::vector<double>& x) { return f.eval(x); });
  auto window = fourier_window_2d(sampled, 4);
  CHECK(std::abs(window[1 + 4][0 + 4](0, 0) - a(0, 0)) < 1e-13);
  CHECK(std::abs(window[-2 + 4][3 + 4](0, 0) - b(0, 0)) < 1e-13);
  CHECK(std::abs(window[2 + 4][2 + 4](0, 0)) < 1e-13);
  CHECK(std::abs(sampled.fourier_coefficient({1, 0})(0, 0) - a(0, 0)) < 1e-13);
}
