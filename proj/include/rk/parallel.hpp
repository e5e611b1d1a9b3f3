#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace rk {

// Splits [0, count) into contiguous chunks, one per worker, and calls
// fn(begin, end, chunk) for each. Chunk boundaries depend only on `count` and
// `threads`; callers that reduce per-chunk results in chunk order get the same
// answer for every thread count. The first exception (by chunk index) is
// rethrown after all workers join.
template <typename Fn>
void parallel_chunks(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  const std::size_t step = (count + workers - 1) / std::max<std::size_t>(workers, 1);
  std::vector<std::exception_ptr> errors(workers);

  auto run = [&](std::size_t w) {
    const std::size_t begin = std::min(count, w * step);
    const std::size_t end = std::min(count, begin + step);
    try {
      fn(begin, end, w);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace rk
