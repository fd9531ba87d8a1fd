#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace qcv {

// Worker cap: min(hardware, QCH_THREADS when set).
inline int thread_budget() {
  int hw = int(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("QCH_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1 && cap < hw) hw = cap;
  }
  return hw;
}

// Static partition; fn(i) must be pure or write only to slot i of its output.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = std::min(thread_budget(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace qcv
