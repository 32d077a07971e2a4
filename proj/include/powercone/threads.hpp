#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace powercone {

// worker cap: POWERCONE_THREADS env var, else hardware concurrency
inline int thread_count() {
  if (const char* env = std::getenv("POWERCONE_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// run fn(i) for i in [0, total); results must be written to per-index slots so
// the merge order stays deterministic regardless of the thread count
inline void parallel_for_indexed(int total, const std::function<void(int)>& fn) {
  int workers = std::min(thread_count(), total);
  if (workers <= 1) {
    for (int i = 0; i < total; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < total; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace powercone
