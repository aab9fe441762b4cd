#pragma once
// Internal helpers for deterministic chunked computations. Each chunk's RNG
// stream is derived from (seed, chunk index) alone, and callers fold
// per-chunk results in chunk order, so worker count never changes a result.

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace bspr::detail {

// splitmix64 finalizer over the counter stream starting at `seed`.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t chunk_index) {
  std::uint64_t z = seed + (chunk_index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Runs fn(chunk) for chunk in [0, n_chunks) on `workers` threads. fn must
// write only to its own chunk's slot; scheduling order is unobservable.
inline void run_chunks(std::uint64_t n_chunks, int workers,
                       const std::function<void(std::uint64_t)>& fn) {
  if (workers <= 1 || n_chunks <= 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto pump = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      fn(c);
    }
  };
  std::vector<std::thread> pool;
  const std::uint64_t spawn = std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), n_chunks);
  pool.reserve(static_cast<std::size_t>(spawn));
  for (std::uint64_t t = 0; t < spawn; ++t) pool.emplace_back(pump);
  for (std::thread& th : pool) th.join();
}

}  // namespace bspr::detail
