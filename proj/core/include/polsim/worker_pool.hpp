#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace polsim {

/// Evaluate f(i) for i in [0, count) on a small worker pool and return the
/// results in input order regardless of completion order. The work items
/// must be independent; exceptions are captured and rethrown on the caller
/// thread.
template <typename R>
std::vector<R> parallel_map(std::size_t count, unsigned threads,
                            const std::function<R(std::size_t)>& f) {
  std::vector<R> results(count);
  if (count == 0) return results;
  if (threads <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = f(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        results[i] = f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned spawn = std::min<unsigned>(threads, static_cast<unsigned>(count));
  pool.reserve(spawn);
  for (unsigned i = 0; i < spawn; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return results;
}

inline unsigned default_worker_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 2 : hw;
}

}  // namespace polsim
