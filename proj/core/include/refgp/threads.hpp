#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace refgp {

// Number of worker threads implied by a user-facing thread count
// (0 means "use all hardware threads").
inline unsigned resolve_threads(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers.  Work items are
// claimed through a shared atomic counter, results must be written to
// per-index storage by the caller.  The first exception thrown by any worker
// is re-thrown on the calling thread after all workers join.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& fn) {
  const unsigned nthreads = resolve_threads(threads);
  if (count == 0) return;
  if (nthreads <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  const unsigned nworkers =
      static_cast<unsigned>(std::min<std::size_t>(nthreads, count));
  pool.reserve(nworkers);
  std::atomic<int> error_guard{0};
  for (unsigned w = 0; w < nworkers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load(std::memory_order_relaxed)) return;
        try {
          fn(i);
        } catch (...) {
          if (error_guard.fetch_add(1) == 0) {
            first_error = std::current_exception();
          }
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace refgp
