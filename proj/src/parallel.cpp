#include "rayforge/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rayforge {

int worker_count(int cap) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("RAYFORGE_THREADS")) {
    int e = std::atoi(env);
    if (e > 0 && e < n) n = e;
  }
  if (cap > 0 && cap < n) n = cap;
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  int worker_cap) {
  int workers = worker_count(worker_cap);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
}

}  // namespace rayforge
