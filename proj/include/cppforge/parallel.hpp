#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace cppforge {

/// 0 means "use the hardware".
inline unsigned resolve_threads(unsigned requested) noexcept {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [0, count) into at most `threads` contiguous chunks and runs
/// fn(chunk_index, begin, end) on each; the first exception is rethrown after
/// all workers join. Returns the number of chunks used.
template <class Fn>
unsigned parallel_chunks(std::uint64_t count, unsigned threads, Fn&& fn) {
  threads = resolve_threads(threads);
  const auto chunks = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, count)));
  if (chunks == 1) {
    fn(0u, std::uint64_t{0}, count);
    return 1;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  const std::uint64_t step = count / chunks;
  const std::uint64_t extra = count % chunks;
  std::uint64_t begin = 0;
  for (unsigned c = 0; c < chunks; ++c) {
    const std::uint64_t end = begin + step + (c < extra ? 1 : 0);
    workers.emplace_back([&, c, begin, end] {
      try {
        fn(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return chunks;
}

}  // namespace cppforge
