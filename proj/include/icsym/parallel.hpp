#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

namespace icsym::detail {

/// Splits [0, trials) into contiguous chunks and runs
/// work(begin, end, counts) on each, with per-chunk counters summed at the
/// end. Integer sums make the result independent of the schedule.
template <typename Work>
std::vector<std::uint64_t> count_trials(std::size_t trials, std::size_t cells, Work&& work) {
  constexpr std::size_t kMinChunk = 4096;
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t chunks = std::clamp<std::size_t>(trials / kMinChunk, 1, hw);

  std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(cells, 0));
  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = trials * c / chunks;
    const std::size_t end = trials * (c + 1) / chunks;
    work(begin, end, std::span<std::uint64_t>(partial[c]));
  };

  if (chunks == 1) {
    run_chunk(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) pool.emplace_back(run_chunk, c);
  }

  std::vector<std::uint64_t> total(cells, 0);
  for (const auto& p : partial)
    for (std::size_t k = 0; k < cells; ++k) total[k] += p[k];
  return total;
}

}  // namespace icsym::detail
