#pragma once

#include <cstdint>
#include <random>

#include "ssb/types.hpp"

namespace ssb {

/// Deterministic pseudo-random source. Streams are keyed by (seed, index) so
/// that sampled checks can be evaluated in any order with identical results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * std::generate_canonical<double, 53>(engine_);
  }

  RVector normal_vector(Eigen::Index size) {
    RVector out(size);
    for (Eigen::Index i = 0; i < size; ++i) out[i] = normal();
    return out;
  }

  CVector complex_normal_vector(Eigen::Index size) {
    CVector out(size);
    for (Eigen::Index i = 0; i < size; ++i) {
      const double re = normal();
      const double im = normal();
      out[i] = Complex(re, im);
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace ssb
