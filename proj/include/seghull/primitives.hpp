#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seghull/errors.hpp"
#include "seghull/executor.hpp"
#include "seghull/segments.hpp"

namespace seghull {

// Per-element state in [0, k). k is explicit so that trailing states with no
// elements remain representable.
struct StateFlags {
  std::vector<std::uint32_t> states;
  std::uint32_t k = 1;

  std::size_t size() const noexcept { return states.size(); }
};

// Destination index per element. For flag_permute every element is live and
// dest is a bijection on [0, n). For compact only kept elements are live, and
// dest restricted to them is strictly increasing onto [0, out_len).
struct PermutationMap {
  std::vector<Index> dest;
  std::size_t out_len = 0;
};

// true = keep.
struct BooleanMask {
  std::vector<std::uint8_t> keep;

  std::size_t size() const noexcept { return keep.size(); }
  std::size_t count() const noexcept;
};

// Intermediate arrays of flag_permute, one row per state.
//   scan[i][j]  = elements of state i strictly before j in j's segment
//   count[i][j] = elements of state i in j's segment
struct FlagPermuteWorkspace {
  std::vector<Index> head_self;    // head writes its own index, 0 elsewhere
  std::vector<Index> head_index;   // index of the element's segment head
  std::vector<std::vector<Index>> mask;
  std::vector<std::vector<Index>> scan;
  std::vector<std::vector<Index>> count;
};

struct FlagPermuteResult {
  PermutationMap permutation;
  SegmentFlags segments;
};

struct CompactResult {
  PermutationMap permutation;
  SegmentFlags segments;  // length permutation.out_len
};

FlagPermuteWorkspace flag_permute_workspace(const StateFlags& f, const SegmentFlags& s,
                                            const Executor& exec = sequential_executor());

// Stable in-segment grouping by state ("permute and segment"). Element i of a
// segment with head h moves to h + (elements of smaller states in the segment)
// + (elements of its own state before it). Every non-empty state group of a
// segment becomes a new segment.
FlagPermuteResult flag_permute(const StateFlags& f, const SegmentFlags& s,
                               const Executor& exec = sequential_executor());

// Segment-aware stream compaction. Kept elements keep their order; a segment's
// head moves to its first kept element, and segments with no kept element
// disappear.
CompactResult compact(const BooleanMask& b, const SegmentFlags& s,
                      const Executor& exec = sequential_executor());

namespace detail {

template <class T>
std::vector<T> scatter_impl(std::span<const T> data, const PermutationMap& p,
                            const std::uint8_t* live, const Executor& exec) {
  const std::size_t n = data.size();
  if (p.dest.size() != n) throw ContractViolation("scatter: data and permutation differ in length");
  std::vector<T> out(p.out_len);
  std::vector<std::atomic<std::uint8_t>> taken(p.out_len);
  std::atomic<bool> bad{false};
  exec.parallel_for(n, [&](std::size_t i) {
    if (live != nullptr && live[i] == 0) return;
    const Index d = p.dest[i];
    if (d < 0 || static_cast<std::size_t>(d) >= p.out_len ||
        taken[static_cast<std::size_t>(d)].exchange(1, std::memory_order_relaxed) != 0) {
      bad.store(true, std::memory_order_relaxed);
      return;
    }
    out[static_cast<std::size_t>(d)] = data[i];
  });
  if (bad.load()) throw ContractViolation("scatter: destination out of range or collision");
  std::size_t live_count = n;
  if (live != nullptr) {
    live_count = 0;
    for (std::size_t i = 0; i < n; ++i) live_count += live[i] != 0 ? 1 : 0;
  }
  if (live_count != p.out_len) throw ContractViolation("scatter: live elements do not fill the output");
  return out;
}

}  // namespace detail

// out[p.dest[i]] = data[i] for every element (flag_permute-style maps).
template <class T>
std::vector<T> scatter(std::span<const T> data, const PermutationMap& p,
                       const Executor& exec = sequential_executor()) {
  return detail::scatter_impl<T>(data, p, nullptr, exec);
}

// Same, restricted to elements with live.keep[i] set (compact-style maps).
template <class T>
std::vector<T> scatter(std::span<const T> data, const PermutationMap& p, const BooleanMask& live,
                       const Executor& exec = sequential_executor()) {
  if (live.size() != data.size()) throw ContractViolation("scatter: mask and data differ in length");
  return detail::scatter_impl<T>(data, p, live.keep.data(), exec);
}

template <class T>
std::vector<T> scatter(const std::vector<T>& data, const PermutationMap& p,
                       const Executor& exec = sequential_executor()) {
  return scatter(std::span<const T>(data), p, exec);
}

template <class T>
std::vector<T> scatter(const std::vector<T>& data, const PermutationMap& p,
                       const BooleanMask& live, const Executor& exec = sequential_executor()) {
  return scatter(std::span<const T>(data), p, live, exec);
}

}  // namespace seghull
