#pragma once

// Deterministic chunked reduction. The index range is cut into fixed-size chunks
// independent of the worker count; partial results are combined in chunk order, so
// the floating-point result does not depend on how many threads ran.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace qcising {

inline constexpr std::uint64_t kReductionChunk = 4096;

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

/// chunk(begin, end) -> T, combine(T acc, T part) -> T.
template <class T, class Chunk, class Combine>
T chunked_reduce(std::uint64_t count, unsigned threads, T init, Chunk chunk, Combine combine) {
  const std::uint64_t chunks = (count + kReductionChunk - 1) / kReductionChunk;
  std::vector<T> parts(chunks, init);
  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t begin = c * kReductionChunk;
    parts[c] = chunk(begin, std::min(count, begin + kReductionChunk));
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), chunks));
  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    }
    for (auto& t : pool) t.join();
  }
  T acc = init;
  for (const auto& p : parts) acc = combine(acc, p);
  return acc;
}

}  // namespace qcising
