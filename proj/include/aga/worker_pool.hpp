#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace aga {

// Runs fn(i) for i in [0, count) on `jobs` threads pulling from a shared
// atomic counter. The first exception wins and is rethrown on the caller's
// thread after every worker drains. stop_after > 0 abandons the remaining
// indices once that many calls have completed — the hook the interruption
// tests use to simulate a killed run.
inline void parallel_for(size_t count, unsigned jobs,
                         const std::function<void(size_t)>& fn,
                         size_t stop_after = 0) {
  if (jobs == 0) jobs = 1;
  if (count == 0) return;

  std::atomic<size_t> next{0};
  std::atomic<size_t> completed{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      if (stop_after > 0 && completed.load(std::memory_order_relaxed) >= stop_after) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      const size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
      completed.fetch_add(1, std::memory_order_relaxed);
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }

  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace aga
