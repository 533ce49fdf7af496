#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gkdv {

// Worker count: GKDV_THREADS caps parallelism, default all available cores.
inline int max_threads() {
  if (const char* env = std::getenv("GKDV_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Runs fn(chunk) for chunk = 0 .. n_chunks-1 on a transient worker pool.
// Chunks are handed out dynamically, so callers that need deterministic
// results must write into per-chunk slots and combine them in index order
// afterwards.  The first exception thrown by any worker is rethrown here.
template <typename Fn>
void parallel_for_chunks(std::size_t n_chunks, Fn&& fn) {
  const std::size_t nthreads =
      std::min<std::size_t>(static_cast<std::size_t>(max_threads()), n_chunks);
  if (nthreads <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= n_chunks) return;
      try {
        fn(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace gkdv
