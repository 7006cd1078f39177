#pragma once

#include <cstdint>
#include <random>

#include "fup/fft.hpp"

namespace fup {

/// Seeded generator with platform-independent output. std::mt19937_64's
/// sequence is fixed by the standard; the conversions below avoid the
/// implementation-defined std::*_distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform on the square [-1, 1) x [-1, 1).
  cplx complex_uniform() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

  /// A multiple of 2^-bits in [0, span). Products with integers below
  /// 2^(53 - bits) are then exact in double precision.
  double dyadic(double span, int bits = 30) {
    const auto denom = static_cast<double>(std::uint64_t{1} << bits);
    const auto count = static_cast<std::uint64_t>(span * denom);
    return static_cast<double>(engine_() % count) / denom;
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fup
