#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace oa {

/// 0 means "all available hardware threads".
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, count) into `chunks` contiguous ranges and runs fn(begin, end, chunk) on up to
/// `threads` workers. Chunk boundaries depend only on `count` and `chunks`, so callers that
/// merge per-chunk results in chunk order get the same answer for any thread count.
template <class Fn>
void parallel_chunks(std::size_t count, std::size_t chunks, unsigned threads, Fn&& fn) {
  chunks = std::max<std::size_t>(1, std::min(chunks, count));
  const auto bounds = [&](std::size_t c) { return count * c / chunks; };
  if (threads <= 1 || chunks == 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(bounds(c), bounds(c + 1), c);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(threads);
  const unsigned used = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
  for (unsigned w = 0; w < used; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < chunks; c += used) fn(bounds(c), bounds(c + 1), c);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace oa
