#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace excursion {

/// SplitMix64 step; used to derive independent per-chunk RNG seeds from
/// (seed, chunk index) so parallel runs are reproducible.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t chunk) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (chunk + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Worker cap: EXCURSION_THREADS when set (clamped to [1, 256]), else the
/// hardware concurrency.
unsigned worker_count();

/// Runs fn(chunk_index) for chunk_index in [0, n_chunks) on up to
/// worker_count() threads.  fn must write only to per-chunk slots; callers
/// reduce the slots in index order so results do not depend on scheduling.
void parallel_for_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& fn);

}  // namespace excursion
