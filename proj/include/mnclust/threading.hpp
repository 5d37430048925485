#pragma once

#include <cstdint>
#include <functional>

namespace mnclust {

// Runs fn(0..n-1) across worker threads; rethrows the first exception.
// threads <= 0 uses hardware concurrency.  Callers own determinism: results
// must be written to per-index slots.
void parallel_for(int n, const std::function<void(int)>& fn, int threads = 0);

// splitmix64-style mixer for deriving independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace mnclust
