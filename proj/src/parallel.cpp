#include "normgeom/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace normgeom {

namespace {

std::atomic<unsigned>& thread_cap() {
  static std::atomic<unsigned> cap{std::max(1u, std::thread::hardware_concurrency())};
  return cap;
}

}  // namespace

void set_max_threads(unsigned threads) { thread_cap().store(std::max(1u, threads)); }

unsigned max_threads() { return thread_cap().load(); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min<std::size_t>(max_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) task(i);
    });
  }
}

}  // namespace normgeom
