#pragma once

// Seeded deterministic randomness for instance generation.
//
// mt19937_64 output is specified by the C++ standard, so the same seed
// yields the same instances on every platform.  std::uniform_int_distribution
// is implementation-defined and deliberately avoided.

#include <cstdint>
#include <random>
#include <stdexcept>

namespace chroma {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform integer in [lo, hi] by rejection sampling, bias free.
  long uniform(long lo, long hi) {
    if (lo > hi) throw std::invalid_argument("Rng: empty range");
    std::uint64_t range = std::uint64_t(hi - lo) + 1;
    if (range == 0) return long(next());  // full 64-bit range
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return lo + long(v % range);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace chroma
