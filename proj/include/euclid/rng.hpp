#ifndef EUCLID_RNG_HPP
#define EUCLID_RNG_HPP

#include <cstdint>
#include <random>

namespace euclid {

// SplitMix64 step; used to derive independent substream seeds from
// (seed, stream index) so sharded runs are reproducible by construction.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// mt19937_64 engine seeded through SplitMix64. Bounded draws use rejection
// on the raw 64-bit output, so the sample sequence is implementation
// independent (std distributions are not).
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0)
      : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x517cc1b727220a95ull))) {}

  uint64_t next() { return engine_(); }

  // uniform on [1, n]
  uint64_t uniform(uint64_t n) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do { x = engine_(); } while (x >= limit);
    return 1 + x % n;
  }

  // uniform on [lo, hi]
  uint64_t uniform(uint64_t lo, uint64_t hi) { return lo - 1 + uniform(hi - lo + 1); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace euclid

#endif  // EUCLID_RNG_HPP
