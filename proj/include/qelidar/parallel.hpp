#pragma once

// Chunked worker pool for embarrassingly parallel trial loops. Work items
// must be independent; determinism comes from indexing the RNG by item, so
// the split can never change results.

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace qel {

inline void parallel_for(uint64_t n, int threads,
                         const std::function<void(uint64_t)>& body) {
  if (threads <= 1 || n < 2) {
    for (uint64_t i = 0; i < n; ++i) body(i);
    return;
  }
  const uint64_t workers =
      std::min<uint64_t>(static_cast<uint64_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (uint64_t w = 0; w < workers; ++w) {
    const uint64_t lo = n * w / workers;
    const uint64_t hi = n * (w + 1) / workers;
    pool.emplace_back([lo, hi, &body] {
      for (uint64_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace qel
