#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace ballcomp {

// Worker cap from BALLCOMP_THREADS; 0 or unset means hardware concurrency.
int thread_budget();

// Runs fn(i) for i in [0, n). Task outputs must go to per-index slots; the
// schedule is unspecified but results are then independent of it.
template <typename F>
void parallel_for(std::size_t n, F&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_budget()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}
