#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace krank {

/// Worker count: $WORKERS if set to a positive integer, else `fallback` when
/// positive, else the hardware concurrency.
int resolve_workers(int fallback = 0);

/// Runs fn(i) for i in [0, count) on up to `workers` threads and returns the
/// results in index order, so output never depends on scheduling. The first
/// exception thrown by any task is rethrown after all workers stop.
template <typename Fn>
auto parallel_map(std::size_t count, int workers, Fn&& fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> results(count);
  const std::size_t threads =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        results[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace krank
