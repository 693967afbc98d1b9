#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace magsq {

inline int effective_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Evaluates fn(i) for i in [0, n) on a small worker pool and gathers results
// into an index-ordered buffer, so reductions downstream are independent of
// completion order. The first exception wins and is rethrown after join.
template <typename T>
std::vector<T> parallel_map(int workers, int n, const std::function<T(int)>& fn) {
  std::vector<T> out(static_cast<size_t>(n));
  if (n == 0) return out;
  workers = std::min(effective_workers(workers), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = fn(i);
    return out;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        int i = next.fetch_add(1);
        if (i >= n) break;
        try {
          out[static_cast<size_t>(i)] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace magsq
