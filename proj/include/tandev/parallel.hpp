#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace tandev {

inline int default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs fn(0..n-1) on up to `jobs` threads. Each index is handled exactly
// once, so results written to slot i do not depend on scheduling. The first
// exception (by index) is rethrown after all workers finish.
inline void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  jobs = std::clamp(jobs <= 0 ? default_jobs() : jobs, 1, n);
  std::vector<std::exception_ptr> errors(n);
  auto guarded = [&](int i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) guarded(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (int i = next++; i < n; i = next++) guarded(i);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace tandev
