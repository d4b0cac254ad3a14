#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace maxcon {

/// Worker count: MAXCON_THREADS if set and positive, else the hardware count.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("MAXCON_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

namespace detail {
inline thread_local bool in_parallel_region = false;
}

/// Runs body(i) for i in [0, count) over contiguous chunks. Results must be
/// written to per-index slots; no ordering between indices is implied.
/// Nested calls run sequentially on the calling worker.
template <class Body>
void parallel_for(std::size_t count, Body&& body, std::size_t threads = worker_count(),
                  std::size_t min_parallel = 64) {
  threads = std::min(threads, count);
  if (threads <= 1 || count < min_parallel || detail::in_parallel_region) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      detail::in_parallel_region = true;
      try {
        const std::size_t hi = std::min(count, (t + 1) * chunk);
        for (std::size_t i = t * chunk; i < hi; ++i) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace maxcon
