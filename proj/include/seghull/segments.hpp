#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seghull/executor.hpp"

namespace seghull {

using Index = std::int64_t;

// Segment-head flags over a flat element array. flags[i] == 1 starts a new
// segment at i; a segment runs up to (not including) the next head.
//
// A well-formed array is either empty or has flags[0] == 1. The class does not
// enforce this on construction so that malformed arrays can be represented and
// rejected by validate_segments().
class SegmentFlags {
 public:
  SegmentFlags() = default;
  explicit SegmentFlags(std::vector<std::uint8_t> flags) : flags_(std::move(flags)) {}
  SegmentFlags(std::initializer_list<int> flags);

  // n elements in a single segment.
  static SegmentFlags single(std::size_t n);

  std::size_t size() const noexcept { return flags_.size(); }
  bool empty() const noexcept { return flags_.empty(); }
  bool is_head(std::size_t i) const noexcept { return flags_[i] != 0; }
  std::span<const std::uint8_t> flags() const noexcept { return flags_; }
  std::span<std::uint8_t> flags() noexcept { return flags_; }

  std::size_t count_heads() const noexcept;

  friend bool operator==(const SegmentFlags&, const SegmentFlags&) = default;

 private:
  std::vector<std::uint8_t> flags_;
};

enum class ScanOp { kSum, kMax, kMin };
enum class ScanDirection { kForward, kBackward };
enum class ScanMode { kInclusive, kExclusive };

struct ScanSpec {
  ScanOp op = ScanOp::kSum;
  ScanDirection direction = ScanDirection::kForward;
  ScanMode mode = ScanMode::kInclusive;
};

// Running combination of values restarted at every segment boundary. Forward
// scans start at each head; backward scans start at each segment's last
// element. Exclusive scans emit the operator identity at the starting boundary.
//
// Instantiated for Index and double. Sum scans over double are rejected with
// ContractViolation: a reassociated floating-point sum would depend on the
// executor's partition.
template <class T>
std::vector<T> segmented_scan(std::span<const T> values, const SegmentFlags& s, ScanSpec spec,
                              const Executor& exec = sequential_executor());

template <class T>
T scan_identity(ScanOp op);

// Unsegmented scan: the whole array is one segment.
template <class T>
std::vector<T> scan(std::span<const T> values, ScanSpec spec,
                    const Executor& exec = sequential_executor());

// Per-segment reduction written to every element of the segment
// (forward inclusive scan followed by a backward inclusive scan).
template <class T>
std::vector<T> segment_broadcast(std::span<const T> values, const SegmentFlags& s, ScanOp op,
                                 const Executor& exec = sequential_executor());

// s_h[i] = index of the head of i's segment. Heads write their own index,
// everything else writes 0, then a forward inclusive segmented sum.
std::vector<Index> head_index_broadcast(const SegmentFlags& s,
                                        const Executor& exec = sequential_executor());

// ids[i] = (number of heads at indices <= i) - 1.
std::vector<Index> segment_ids(const SegmentFlags& s, const Executor& exec = sequential_executor());

// Positions of all heads in increasing order.
std::vector<Index> head_positions(const SegmentFlags& s);

// std::nullopt when s has length n and is empty or starts with a head;
// otherwise a description of the violation.
std::optional<std::string> validate_segments(const SegmentFlags& s, std::size_t n);

// Throws ContractViolation if validate_segments reports a problem.
void require_valid_segments(const SegmentFlags& s, std::size_t n, const char* context);

}  // namespace seghull
