#pragma once

#include <cstdint>
#include <random>

namespace lpentropy {

// Deterministic uniform source. std::uniform_real_distribution is not
// bit-identical across standard libraries, and scan output must reproduce
// byte-for-byte from a seed, so the bit mapping is explicit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lpentropy
