#include "torsionlab/clifford.hpp"

#include <complex>
#include <cstdint>
#include <stdexcept>

#include "torsionlab/exterior_algebra.hpp"

namespace torsionlab {

namespace {
int dim_of(int p) { return 1 << p; }

void check_axis(int p, int axis) {
  if (axis < 1 || axis > p) throw std::out_of_range("clifford: axis out of range");
}
} // namespace

Eigen::MatrixXcd exterior_wedge_op(int p, int axis) {
  check_axis(p, axis);
  const int dim = dim_of(p);
  const std::uint32_t bit = std::uint32_t{1} << (axis - 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint32_t s = 0; s < std::uint32_t(dim); ++s) {
    if (s & bit) continue;
    m(s | bit, s) = double(wedge_sign(bit, s));
  }
  return m;
}

Eigen::MatrixXcd exterior_contract_op(int p, int axis) {
  // Adjoint of the wedge for the flat metric: removes the generator with the
  // same reordering sign.
  return exterior_wedge_op(p, axis).transpose();
}

Eigen::MatrixXcd clifford_c(int p, int axis) {
  return exterior_wedge_op(p, axis) - exterior_contract_op(p, axis);
}

Eigen::MatrixXcd clifford_chat(int p, int axis) {
  return exterior_wedge_op(p, axis) + exterior_contract_op(p, axis);
}

Eigen::MatrixXcd clifford_tau(int p) {
  const int dim = dim_of(p);
  Eigen::MatrixXcd tau = Eigen::MatrixXcd::Identity(dim, dim);
  for (int a = 1; a <= p; ++a) tau = tau * clifford_c(p, a);
  // (sqrt(-1))^{p(p+1)/2}
  const int quarter = (p * (p + 1) / 2) % 4;
  const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return i_pow[quarter] * tau;
}

} // namespace torsionlab
