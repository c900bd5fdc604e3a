#pragma once

// Block map-reduce over Monte Carlo sample slots.
//
// Slots [0, n) are cut into fixed blocks of kBlockSize. Block b draws only
// from RngStream(seed, stream_id(tag, b)) and fills its own accumulator;
// partial accumulators are folded in block order. The result therefore does
// not depend on the number of worker threads: the OpenMP path and the serial
// reference path produce identical accumulators, bit for bit.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <vector>

#include <omp.h>

namespace entangle {

inline constexpr std::uint64_t kBlockSize = 4096;

struct Executor {
  /// Worker threads; 1 runs the serial reference loop.
  int threads = 1;

  static Executor serial() { return {1}; }
  /// One worker per logical core, capped at 64.
  static Executor hardware();
};

inline std::uint64_t block_count(std::uint64_t n) { return (n + kBlockSize - 1) / kBlockSize; }

/// Distinct tags give disjoint stream families for different parts of a run.
inline std::uint64_t stream_id(std::uint32_t tag, std::uint64_t block) {
  return (static_cast<std::uint64_t>(tag) << 40) | block;
}

/// Serial reference: folds blocks [first, last) in order.
/// fn(Acc&, block, slot_begin, slot_end).
template <class Acc, class MakeAcc, class BlockFn>
Acc reduce_blocks_serial(std::uint64_t n, std::uint64_t first, std::uint64_t last, MakeAcc&& make,
                         BlockFn&& fn) {
  Acc total = make();
  for (std::uint64_t b = first; b < last; ++b) {
    Acc part = make();
    const std::uint64_t begin = b * kBlockSize;
    const std::uint64_t end = std::min(n, begin + kBlockSize);
    fn(part, b, begin, end);
    total.merge(part);
  }
  return total;
}

/// OpenMP version of reduce_blocks_serial; same result for any thread count.
template <class Acc, class MakeAcc, class BlockFn>
Acc reduce_blocks_parallel(std::uint64_t n, std::uint64_t first, std::uint64_t last,
                           MakeAcc&& make, BlockFn&& fn, int threads) {
  const std::int64_t nb = static_cast<std::int64_t>(last - first);
  std::vector<std::optional<Acc>> partial(static_cast<std::size_t>(nb));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nb));

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t k = 0; k < nb; ++k) {
    const std::uint64_t b = first + static_cast<std::uint64_t>(k);
    try {
      Acc part = make();
      const std::uint64_t begin = b * kBlockSize;
      const std::uint64_t end = std::min(n, begin + kBlockSize);
      fn(part, b, begin, end);
      partial[static_cast<std::size_t>(k)].emplace(std::move(part));
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }

  // Report the failure of the lowest block so errors are deterministic too.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  Acc total = make();
  for (auto& p : partial) total.merge(*p);
  return total;
}

template <class Acc, class MakeAcc, class BlockFn>
Acc reduce_blocks(std::uint64_t n, MakeAcc&& make, BlockFn&& fn, const Executor& ex) {
  const std::uint64_t nb = block_count(n);
  if (ex.threads <= 1) return reduce_blocks_serial<Acc>(n, 0, nb, make, fn);
  return reduce_blocks_parallel<Acc>(n, 0, nb, make, fn, ex.threads);
}

} // namespace entangle
