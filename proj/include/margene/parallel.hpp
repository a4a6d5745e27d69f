#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace margene {

//! Runs body(i) for i in [0, count) across up to `threads` workers
//! (hardware concurrency when 0). Each index is processed exactly once;
//! callers write to disjoint slots, so results never depend on scheduling.
inline void parallel_for(std::size_t count, std::size_t threads,
                         const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  std::size_t n_threads = threads == 0
                              ? std::max(1u, std::thread::hardware_concurrency())
                              : threads;
  n_threads = std::min(n_threads, count);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        // Strided assignment: worker t handles t, t + T, t + 2T, ...
        for (std::size_t i = t; i < count; i += n_threads) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace margene
