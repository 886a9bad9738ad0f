#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

namespace torsionlab {

/// Dense complex kernels used by the spectral verifier. Backed by LAPACKE
/// when available, otherwise by Eigen decompositions.

class DenseLU {
public:
  explicit DenseLU(Eigen::MatrixXcd a); // factorizes (consumes its copy)

  int size() const { return n_; }
  /// Solves A x = b, overwriting b.
  void solve_in_place(Eigen::MatrixXcd& b) const;
  /// Solves A^H x = b, overwriting b.
  void solve_adjoint_in_place(Eigen::MatrixXcd& b) const;
  /// Smallest singular value estimate by inverse iteration on A^H A.
  double smallest_singular_value(int iterations = 15) const;

private:
  int n_ = 0;
  Eigen::MatrixXcd lu_;
  std::vector<int> ipiv_;
  std::shared_ptr<Eigen::PartialPivLU<Eigen::MatrixXcd>> eigen_lu_;
  std::shared_ptr<Eigen::PartialPivLU<Eigen::MatrixXcd>> eigen_lu_adjoint_;
};

/// Full SVD a = u diag(s) v^H (square input).
void dense_svd(const Eigen::MatrixXcd& a, Eigen::MatrixXcd& u, Eigen::VectorXd& s,
               Eigen::MatrixXcd& vh);

bool lapack_backend();

} // namespace torsionlab
