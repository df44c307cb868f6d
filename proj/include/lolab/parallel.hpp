#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lolab {

/// Runs body(chunk_index, begin, end) over [0, count) split into `chunks`
/// contiguous pieces, using up to `threads` workers. The chunking depends only
/// on `chunks`, so callers that merge per-chunk results in index order get the
/// same answer for every thread count.
template <typename Body>
void parallel_chunks(std::size_t count, std::size_t chunks, unsigned threads, Body&& body) {
  if (count == 0) return;
  chunks = std::max<std::size_t>(1, std::min(chunks, count));
  auto bounds = [&](std::size_t c) { return count * c / chunks; };
  if (threads <= 1 || chunks == 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c, bounds(c), bounds(c + 1));
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::size_t workers = std::min<std::size_t>(threads, chunks);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < chunks; c += workers) {
        try {
          body(c, bounds(c), bounds(c + 1));
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Convenience form: one chunk per worker.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  parallel_chunks(count, std::max(1u, threads), threads, std::forward<Body>(body));
}

}  // namespace lolab
