#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kpztail {

// Runs body(i) for i in [0, count) on up to `workers` threads (0 = hardware concurrency).
// Each index is handled exactly once, so any per-index output is scheduler independent.
template <class Body>
void parallel_for(std::size_t count, int workers, Body body) {
  std::size_t nw = workers > 0 ? static_cast<std::size_t>(workers)
                               : std::max(1u, std::thread::hardware_concurrency());
  nw = std::min(nw, std::max<std::size_t>(count, 1));
  if (nw <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex guard;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < nw; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += nw) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(guard);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace kpztail
