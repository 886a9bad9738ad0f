#pragma once

#include <cstdint>

#include "torsionlab/super_matrix.hpp"

namespace torsionlab {

/// Deterministic RNG (SplitMix64 + Box-Muller), stable across platforms so
/// seeded reports are reproducible byte for byte.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() { // in [0, 1)
    return double(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal();

  Complex complex_normal() { return Complex(normal(), normal()); }

  Matrix matrix_normal(int rows, int cols);

private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Random homogeneous SuperElement of the given total parity with standard
/// normal coefficients on admissible entries.
SuperElement random_super_element(Rng& rng, const GradedSpacePtr& space,
                                  const FormContextPtr& ctx, int parity);

} // namespace torsionlab
