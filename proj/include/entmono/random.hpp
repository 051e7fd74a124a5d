#pragma once

#include <cstdint>
#include <random>

#include "entmono/state.hpp"

namespace entmono {

/// Seeded random stream. Normal deviates are produced with Box-Muller on top
/// of the raw 64-bit engine output, so a seed yields the same stream on every
/// platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double normal();
  /// Standard complex Gaussian, E|z|^2 = 1.
  Complex complex_normal();
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

  /// Independent stream for sub-task k: seeded with seed() + k.
  Rng derived(std::uint64_t k) const { return Rng(seed_ + k); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Mixes several integers into one well-spread seed (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

Matrix random_ginibre(int rows, int cols, Rng& rng);
/// Haar-random unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal absorbed into Q.
Matrix random_unitary(int d, Rng& rng);
Vector random_unit_vector(int d, Rng& rng);

PureState random_pure(const Dims& dims, Rng& rng);
/// Trace-normalized G G^dagger with G a dims.total() x rank Ginibre matrix.
DensityMatrix random_mixed(const Dims& dims, int rank, Rng& rng);
/// Convex combination of n_terms product projectors with Dirichlet(1,...,1)
/// weights.
DensityMatrix random_separable(const Dims& dims, int n_terms, Rng& rng);

}  // namespace entmono
