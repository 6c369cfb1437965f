#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace fatpoints {

/**
 * Runs f(0), ..., f(n-1) on up to `jobs` threads. Callers write results
 * into pre-sized slots indexed by i, so the merged outcome is independent
 * of completion order. All library operations are pure, which makes this
 * safe without further locking.
 */
template <class F>
void parallel_for(std::size_t n, int jobs, F&& f) {
  if (jobs < 2 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace fatpoints
