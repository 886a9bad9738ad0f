#include "torsionlab/lapack_dense.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#ifdef TORSIONLAB_HAVE_LAPACKE
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

namespace torsionlab {

bool lapack_backend() {
#ifdef TORSIONLAB_HAVE_LAPACKE
  return true;
#else
  return false;
#endif
}

DenseLU::DenseLU(Eigen::MatrixXcd a) : n_(int(a.rows())) {
  if (a.cols() != n_) throw std::invalid_argument("DenseLU: square matrices only");
#ifdef TORSIONLAB_HAVE_LAPACKE
  lu_ = std::move(a);
  ipiv_.resize(n_);
  const int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n_, n_, lu_.data(), n_, ipiv_.data());
  if (info != 0) throw std::runtime_error("DenseLU: zgetrf failed, info=" + std::to_string(info));
#else
  eigen_lu_ = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXcd>>(a);
  eigen_lu_adjoint_ =
      std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXcd>>(a.adjoint().eval());
#endif
}

void DenseLU::solve_in_place(Eigen::MatrixXcd& b) const {
#ifdef TORSIONLAB_HAVE_LAPACKE
  const int info =
      LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n_, int(b.cols()),
                     const_cast<std::complex<double>*>(lu_.data()), n_,
                     const_cast<int*>(ipiv_.data()), b.data(), n_);
  if (info != 0)
    throw std::runtime_error("DenseLU: zgetrs failed, info=" + std::to_string(info));
#else
  b = eigen_lu_->solve(b);
#endif
}

void DenseLU::solve_adjoint_in_place(Eigen::MatrixXcd& b) const {
#ifdef TORSIONLAB_HAVE_LAPACKE
  const int info =
      LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'C', n_, int(b.cols()),
                     const_cast<std::complex<double>*>(lu_.data()), n_,
                     const_cast<int*>(ipiv_.data()), b.data(), n_);
  if (info != 0)
    throw std::runtime_error("DenseLU: zgetrs (adjoint) failed, info=" + std::to_string(info));
#else
  b = eigen_lu_adjoint_->solve(b);
#endif
}

double DenseLU::smallest_singular_value(int iterations) const {
  Eigen::MatrixXcd x(n_, 1);
  for (int i = 0; i < n_; ++i)
    x(i, 0) = std::complex<double>(1.0 + 1e-3 * double((i * 7919) % 13), 0.0);
  x /= x.norm();
  double sigma = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::MatrixXcd y = x;
    solve_adjoint_in_place(y);
    solve_in_place(y);
    const double growth = y.norm();
    if (growth == 0.0) return 0.0;
    sigma = 1.0 / std::sqrt(growth);
    x = y / growth;
  }
  return sigma;
}

void dense_svd(const Eigen::MatrixXcd& a, Eigen::MatrixXcd& u, Eigen::VectorXd& s,
               Eigen::MatrixXcd& vh) {
  const int n = int(a.rows());
  if (a.cols() != n) throw std::invalid_argument("dense_svd: square matrices only");
#ifdef TORSIONLAB_HAVE_LAPACKE
  Eigen::MatrixXcd work = a;
  u.resize(n, n);
  vh.resize(n, n);
  s.resize(n);
  const int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'A', n, n, work.data(), n, s.data(),
                                  u.data(), n, vh.data(), n);
  if (info != 0)
    throw std::runtime_error("dense_svd: zgesdd failed, info=" + std::to_string(info));
#else
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  u = svd.matrixU();
  s = svd.singularValues();
  vh = svd.matrixV().adjoint();
#endif
}

} // namespace torsionlab
