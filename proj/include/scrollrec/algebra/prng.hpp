#pragma once

#include <cstdint>
#include <random>

#include "scrollrec/algebra/rat.hpp"

namespace scrollrec::algebra {

/// Seeded generator used for every random choice in the library. Bounded
/// draws use plain modular reduction so the stream is identical on every
/// standard library.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish integer in [lo, hi].
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }

  /// Nonzero integer in [-bound, bound].
  long nonzero(long bound) {
    long v = 0;
    while (v == 0) v = uniform(-bound, bound);
    return v;
  }

  Rat small_rat(long bound) { return Rat(uniform(-bound, bound)); }

  /// Independent child stream, for handing to sub-computations.
  Prng fork() { return Prng(engine_() ^ 0x9e3779b97f4a7c15ULL); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace scrollrec::algebra
