#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace gqi {

/// Thread budget: GQI_THREADS if set (minimum 1), otherwise hardware concurrency.
inline int thread_budget() {
  if (const char* env = std::getenv("GQI_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, count) across the thread budget. Each index owns its
/// output slot, so results are in grid order regardless of scheduling.
inline void parallel_for(int count, const std::function<void(int)>& fn) {
  int threads = std::min(thread_budget(), count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([=, &fn] {
      for (int i = t; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace gqi
