#pragma once

#include <cstdint>
#include <random>

namespace pgbrrt {

/// Seeded sample stream. The engine is mt19937_64 (fully specified by the
/// standard) and the [0,1) conversion is done by hand, so sequences are
/// bitwise-stable across standard libraries.
class SeededRandomSource {
 public:
  explicit SeededRandomSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pgbrrt
