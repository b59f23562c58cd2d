#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace modelset {

/// Worker threads used by the partitioned loops. Defaults to the
/// MODELSET_THREADS environment variable, or 1.
unsigned thread_budget();
void set_thread_budget(unsigned threads);

/// Runs fn(block) for block in [0, n_blocks). Blocks are claimed dynamically
/// but callers write into per-block slots, so results never depend on the
/// thread count. The first exception thrown by any block is rethrown.
template <class Fn>
void parallel_for_blocks(std::size_t n_blocks, Fn&& fn) {
  unsigned threads = std::min<std::size_t>(thread_budget(), n_blocks);
  if (threads <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t b = next++; b < n_blocks; b = next++) {
      try {
        fn(b);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

/// Fixed block size shared by every partitioned reduction; part of the
/// reproducibility contract for floating-point sums.
inline constexpr std::size_t kBlockSize = 4096;

inline std::size_t block_count(std::size_t n) { return (n + kBlockSize - 1) / kBlockSize; }

}  // namespace modelset
