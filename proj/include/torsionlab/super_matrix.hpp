#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

#include "torsionlab/exterior_algebra.hpp"

namespace torsionlab {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Z-graded complex vector space E^0 + ... + E^n described by its ranks.
class GradedSpace {
public:
  explicit GradedSpace(std::vector<int> ranks);

  int levels() const { return int(ranks_.size()); } // n+1
  int rank(int i) const { return ranks_[i]; }
  int total() const { return total_; }
  int offset(int i) const { return offsets_[i]; }
  int degree_of(int index) const { return degree_of_[index]; }
  /// +1 on even-degree summands, -1 on odd ones.
  double parity_sign(int index) const { return degree_of_[index] % 2 == 0 ? 1.0 : -1.0; }

  /// Number operator: acts by i on E^i.
  Matrix number_operator() const;
  /// Grading (-1)^N as a diagonal matrix.
  Matrix grading() const;

private:
  std::vector<int> ranks_;
  std::vector<int> offsets_;
  std::vector<int> degree_of_;
  int total_ = 0;
};

using GradedSpacePtr = std::shared_ptr<const GradedSpace>;

GradedSpacePtr make_graded_space(std::vector<int> ranks);

/// Form-valued endomorphism of a graded space: an element of
/// Lambda(T*B) (x) End(E) with the Koszul-sign product. Coefficient
/// matrices are stored per generator subset.
class SuperElement {
public:
  SuperElement() = default;
  SuperElement(GradedSpacePtr space, FormContextPtr ctx);

  static SuperElement zero(GradedSpacePtr space, FormContextPtr ctx);
  static SuperElement identity(GradedSpacePtr space, FormContextPtr ctx);
  /// M (x) (monomial of given subset mask).
  static SuperElement wrap(GradedSpacePtr space, FormContextPtr ctx, const Matrix& m,
                           std::uint32_t mask = 0);

  const GradedSpacePtr& space() const { return space_; }
  const FormContextPtr& context() const { return ctx_; }
  bool valid() const { return space_ != nullptr; }

  const Matrix& block(std::uint32_t mask) const { return coeff_[mask]; }
  Matrix& block(std::uint32_t mask) { return coeff_[mask]; }
  std::size_t subsets() const { return coeff_.size(); }

  SuperElement operator+(const SuperElement& o) const;
  SuperElement operator-(const SuperElement& o) const;
  SuperElement operator-() const;
  SuperElement operator*(Complex s) const;
  SuperElement& operator+=(const SuperElement& o);

  /// Largest coefficient-matrix operator norm over subsets.
  double norm() const;
  double max_abs() const;

  /// Total parity if homogeneous within tol: 0 even, 1 odd; nullopt if mixed.
  std::optional<int> parity(double tol = 1e-13) const;
  /// Split into (even, odd) total-parity parts.
  std::pair<SuperElement, SuperElement> parity_split() const;

private:
  GradedSpacePtr space_;
  FormContextPtr ctx_;
  std::vector<Matrix> coeff_; // indexed by generator subset mask
};

SuperElement operator*(Complex s, const SuperElement& a);

/// Product with the Koszul convention
/// (alpha (x) M)(beta (x) N) = (-1)^{|M| |beta|} (alpha ^ beta) (x) (M N).
SuperElement smul(const SuperElement& a, const SuperElement& b);

/// Sum over blocks of (-1)^i tr(.|_{E^i}) applied per generator subset.
Form supertrace(const SuperElement& a);

/// Graded bracket [A,B] = AB - (-1)^{|A||B|} BA; mixed-parity inputs are
/// decomposed internally.
SuperElement supercommutator(const SuperElement& a, const SuperElement& b);

/// Exponential of an even element, by scaling-and-squaring with a
/// truncated Taylor kernel evaluated in the graded algebra.
SuperElement superexp(const SuperElement& a);

/// Form-degree-0 number operator / identity helpers.
SuperElement number_operator(GradedSpacePtr space, FormContextPtr ctx);

} // namespace torsionlab
