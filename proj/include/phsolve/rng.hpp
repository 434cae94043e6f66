#ifndef PHSOLVE_RNG_HPP
#define PHSOLVE_RNG_HPP

#include <cstdint>
#include <string>

#include "phsolve/rational.hpp"

namespace phsolve {

/// Deterministic splittable PRNG (splitmix64 core). Forked streams are
/// independent of draw order on the parent, which keeps per-cell work
/// reproducible under any thread schedule.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, k), k > 0 (rejection sampling, unbiased).
  std::uint64_t below(std::uint64_t k) {
    if (k <= 1) return 0;
    std::uint64_t limit = ~0ull - (~0ull % k);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % k;
  }

  /// Uniform in {1, ..., k} for arbitrary-precision k >= 1.
  Integer one_to(const Integer& k) {
    if (k <= 1) return Integer(1);
    size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    size_t words = (bits + 63) / 64;
    while (true) {
      Integer v(0);
      for (size_t i = 0; i < words; ++i) {
        std::uint64_t w = next();
        v <<= 32;
        v += (unsigned long)(w >> 32);
        v <<= 32;
        v += (unsigned long)(w & 0xffffffffull);
      }
      Integer bound = Integer(1) << (unsigned long)(64 * words);
      Integer limit = bound - bound % k;
      if (v < limit) return v % k + 1;
    }
  }

  std::int64_t one_to_i64(std::int64_t k) { return (std::int64_t)below((std::uint64_t)k) + 1; }

  /// Derive an independent child stream.
  Rng fork(std::uint64_t tag) const {
    Rng child(state_ ^ (0x632be59bd9b4e019ull + tag * 0x9e3779b97f4a7c15ull));
    child.next();
    return child;
  }
  Rng fork(const std::string& label, std::uint64_t idx = 0) const {
    std::uint64_t h = 1469598103934665603ull;
    for (char ch : label) h = (h ^ (unsigned char)ch) * 1099511628211ull;
    return fork(h ^ (idx * 0x2545f4914f6cdd1dull));
  }

 private:
  std::uint64_t state_;
};

}  // namespace phsolve

#endif
