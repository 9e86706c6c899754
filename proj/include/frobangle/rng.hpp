#pragma once
// splitmix64: the per-prime sub-seed is mix_seed(seed, p), so point sampling
// for a given prime is independent of iteration order and thread layout.
#include <cstdint>

namespace frobangle {

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t p) {
  SplitMix64 g(seed ^ (p * 0x9e3779b97f4a7c15ull));
  return g.next();
}

}  // namespace frobangle
