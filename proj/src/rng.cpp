#include "torsionlab/rng.hpp"

#include <cmath>

namespace torsionlab {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform(), u2 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  const double mag = std::sqrt(-2.0 * std::log(u1));
  constexpr double two_pi = 6.28318530717958647692528676655900577;
  spare_ = mag * std::sin(two_pi * u2);
  have_spare_ = true;
  return mag * std::cos(two_pi * u2);
}

Matrix Rng::matrix_normal(int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = complex_normal();
  return m;
}

SuperElement random_super_element(Rng& rng, const GradedSpacePtr& space,
                                  const FormContextPtr& ctx, int parity) {
  SuperElement e = SuperElement::zero(space, ctx);
  const int n = space->total();
  for (std::uint32_t s = 0; s < e.subsets(); ++s) {
    const int fs = popcount(s) % 2;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int bp = (space->degree_of(i) - space->degree_of(j)) % 2 != 0 ? 1 : 0;
        if ((fs + bp) % 2 == parity % 2) e.block(s)(i, j) = rng.complex_normal();
      }
  }
  return e;
}

} // namespace torsionlab
