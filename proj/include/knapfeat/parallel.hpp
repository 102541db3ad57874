#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace knapfeat {

/// Runs fn(i) for i in [0, count) on up to `threads` workers pulling from
/// a shared counter. fn must be safe to call concurrently for distinct i.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, const Fn& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  const unsigned spawned = std::min<unsigned>(threads, static_cast<unsigned>(count));
  pool.reserve(spawned);
  for (unsigned t = 0; t < spawned; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

}  // namespace knapfeat
