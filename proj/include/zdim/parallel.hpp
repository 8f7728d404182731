#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace zdim {

// Splits [0, count) into contiguous chunks, one per worker, and runs
// body(begin, end) on each. threads <= 1 runs inline.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(threads < 1 ? 1 : static_cast<std::size_t>(threads), count);
  if (workers <= 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
}

}  // namespace zdim
