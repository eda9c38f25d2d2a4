#pragma once

#include <cstdint>
#include <random>

#include "lcuwalk/linalg.hpp"

namespace lcuwalk {

/// MT19937-64 with a fixed, language-neutral mapping to doubles:
/// uniform() = (next() >> 11) * 2^-53. std:: distributions are avoided
/// because their algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal via Box-Muller (cosine branch only).
  double normal();

  cplx complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
};

/// Haar-ish random unitary (QR of a complex Gaussian matrix, phases fixed).
CMatrix random_unitary(Eigen::Index dim, Rng& rng);

/// Random Hermitian matrix with spectral norm exactly `norm`.
CMatrix random_hermitian(Eigen::Index dim, double norm, Rng& rng);

/// Random unit vector.
CVector random_state(Eigen::Index dim, Rng& rng);

}  // namespace lcuwalk
