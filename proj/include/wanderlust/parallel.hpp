#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace wanderlust {

/// Splits [0, n) into `workers` contiguous chunks and runs
/// fn(chunk_index, begin, end) for each, one thread per chunk. The chunking
/// depends only on n and workers; callers merge per-chunk results in chunk
/// order to stay independent of scheduling. Returns the chunk count.
template <typename Fn>
std::size_t parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers == 0 ? 1 : workers, n));
  if (chunks == 1) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return 1;
  }
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> threads;
    threads.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t begin = n * c / chunks;
      const std::size_t end = n * (c + 1) / chunks;
      threads.emplace_back([&, c, begin, end] {
        try {
          fn(c, begin, end);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return chunks;
}

}  // namespace wanderlust
