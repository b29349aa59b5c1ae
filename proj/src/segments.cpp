#include "seghull/segments.hpp"

#include <algorithm>
#include <limits>
#include <type_traits>

#include "seghull/errors.hpp"

namespace seghull {

SegmentFlags::SegmentFlags(std::initializer_list<int> flags) {
  flags_.reserve(flags.size());
  for (int f : flags) flags_.push_back(f != 0 ? 1 : 0);
}

SegmentFlags SegmentFlags::single(std::size_t n) {
  std::vector<std::uint8_t> flags(n, 0);
  if (n > 0) flags[0] = 1;
  return SegmentFlags(std::move(flags));
}

std::size_t SegmentFlags::count_heads() const noexcept {
  return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), std::uint8_t{1}));
}

template <class T>
T scan_identity(ScanOp op) {
  switch (op) {
    case ScanOp::kSum:
      return T{0};
    case ScanOp::kMax:
      if constexpr (std::numeric_limits<T>::has_infinity) return -std::numeric_limits<T>::infinity();
      else return std::numeric_limits<T>::lowest();
    case ScanOp::kMin:
      if constexpr (std::numeric_limits<T>::has_infinity) return std::numeric_limits<T>::infinity();
      else return std::numeric_limits<T>::max();
  }
  return T{0};
}

namespace {

template <class T>
T combine(ScanOp op, T a, T b) {
  switch (op) {
    case ScanOp::kSum:
      return a + b;
    case ScanOp::kMax:
      return std::max(a, b);
    case ScanOp::kMin:
      return std::min(a, b);
  }
  return a;
}

// Blocked two-pass scan over positions 0..n-1 in scan order. at(k) maps a scan
// position to an array index; starts(k) tells whether position k begins a new
// segment. Pass one reduces each block from its last segment start; a short
// sequential sweep turns those into per-block carries; pass two rescans each
// block seeded with its carry. All supported operators are exact on the types
// used here, so the result does not depend on the partition.
template <class T, class At, class Starts>
void scan_core(std::span<const T> values, std::span<T> out, ScanOp op, ScanMode mode, At at,
               Starts starts, const Executor& exec) {
  const std::size_t n = values.size();
  const T identity = scan_identity<T>(op);
  const Executor::Partition part = exec.partition(n);

  std::vector<T> block_total(part.blocks, identity);
  std::vector<std::uint8_t> block_restarts(part.blocks, 0);
  if (part.blocks > 1) {
    exec.run(part.blocks, [&](std::size_t b) {
      T acc = identity;
      bool restarted = false;
      for (std::size_t k = part.begin(b), e = part.end(b, n); k < e; ++k) {
        if (starts(k)) {
          acc = identity;
          restarted = true;
        }
        acc = combine(op, acc, values[at(k)]);
      }
      block_total[b] = acc;
      block_restarts[b] = restarted ? 1 : 0;
    });
  }

  std::vector<T> carry(part.blocks, identity);
  for (std::size_t b = 1; b < part.blocks; ++b) {
    carry[b] = block_restarts[b - 1] ? block_total[b - 1]
                                     : combine(op, carry[b - 1], block_total[b - 1]);
  }

  exec.run(part.blocks, [&](std::size_t b) {
    T acc = carry[b];
    for (std::size_t k = part.begin(b), e = part.end(b, n); k < e; ++k) {
      const std::size_t i = at(k);
      if (starts(k)) acc = identity;
      if (mode == ScanMode::kExclusive) {
        out[i] = acc;
        acc = combine(op, acc, values[i]);
      } else {
        acc = combine(op, acc, values[i]);
        out[i] = acc;
      }
    }
  });
}

template <class T>
void reject_float_sum(ScanOp op) {
  if constexpr (std::is_floating_point_v<T>) {
    if (op == ScanOp::kSum) {
      throw ContractViolation("segmented_scan: sum scans over floating-point values are not supported");
    }
  }
}

}  // namespace

template <class T>
std::vector<T> segmented_scan(std::span<const T> values, const SegmentFlags& s, ScanSpec spec,
                              const Executor& exec) {
  reject_float_sum<T>(spec.op);
  const std::size_t n = values.size();
  if (s.size() != n) throw ContractViolation("segmented_scan: values and segment flags differ in length");
  require_valid_segments(s, n, "segmented_scan");
  std::vector<T> out(n);
  const auto flags = s.flags();
  if (spec.direction == ScanDirection::kForward) {
    scan_core<T>(
        values, out, spec.op, spec.mode, [](std::size_t k) { return k; },
        [&](std::size_t k) { return k == 0 || flags[k] != 0; }, exec);
  } else {
    scan_core<T>(
        values, out, spec.op, spec.mode, [n](std::size_t k) { return n - 1 - k; },
        [&, n](std::size_t k) {
          const std::size_t i = n - 1 - k;
          return k == 0 || flags[i + 1] != 0;
        },
        exec);
  }
  return out;
}

template <class T>
std::vector<T> scan(std::span<const T> values, ScanSpec spec, const Executor& exec) {
  reject_float_sum<T>(spec.op);
  const std::size_t n = values.size();
  std::vector<T> out(n);
  if (spec.direction == ScanDirection::kForward) {
    scan_core<T>(
        values, out, spec.op, spec.mode, [](std::size_t k) { return k; },
        [](std::size_t k) { return k == 0; }, exec);
  } else {
    scan_core<T>(
        values, out, spec.op, spec.mode, [n](std::size_t k) { return n - 1 - k; },
        [](std::size_t k) { return k == 0; }, exec);
  }
  return out;
}

template <class T>
std::vector<T> segment_broadcast(std::span<const T> values, const SegmentFlags& s, ScanOp op,
                                 const Executor& exec) {
  auto running = segmented_scan<T>(
      values, s, {op, ScanDirection::kForward, ScanMode::kInclusive}, exec);
  if (op != ScanOp::kSum) {
    return segmented_scan<T>(running, s, {op, ScanDirection::kBackward, ScanMode::kInclusive}, exec);
  }
  // A running sum is not monotone, so carry each segment's last entry back
  // with a max over a mask that is empty everywhere else.
  const std::size_t n = running.size();
  const auto flags = s.flags();
  const T none = scan_identity<T>(ScanOp::kMax);
  exec.parallel_for(n, [&](std::size_t i) {
    if (i + 1 < n && flags[i + 1] == 0) running[i] = none;
  });
  return segmented_scan<T>(running, s, {ScanOp::kMax, ScanDirection::kBackward, ScanMode::kInclusive},
                           exec);
}

template std::vector<Index> segmented_scan<Index>(std::span<const Index>, const SegmentFlags&,
                                                  ScanSpec, const Executor&);
template std::vector<double> segmented_scan<double>(std::span<const double>, const SegmentFlags&,
                                                    ScanSpec, const Executor&);
template std::vector<Index> scan<Index>(std::span<const Index>, ScanSpec, const Executor&);
template std::vector<double> scan<double>(std::span<const double>, ScanSpec, const Executor&);
template std::vector<Index> segment_broadcast<Index>(std::span<const Index>, const SegmentFlags&,
                                                     ScanOp, const Executor&);
template std::vector<double> segment_broadcast<double>(std::span<const double>,
                                                       const SegmentFlags&, ScanOp,
                                                       const Executor&);
template Index scan_identity<Index>(ScanOp);
template double scan_identity<double>(ScanOp);

std::vector<Index> head_index_broadcast(const SegmentFlags& s, const Executor& exec) {
  const std::size_t n = s.size();
  std::vector<Index> self_index(n);
  exec.parallel_for(n, [&](std::size_t i) {
    self_index[i] = s.is_head(i) ? static_cast<Index>(i) : 0;
  });
  return segmented_scan<Index>(self_index, s, {ScanOp::kSum, ScanDirection::kForward,
                                               ScanMode::kInclusive},
                               exec);
}

std::vector<Index> segment_ids(const SegmentFlags& s, const Executor& exec) {
  const std::size_t n = s.size();
  std::vector<Index> heads(n);
  exec.parallel_for(n, [&](std::size_t i) { heads[i] = s.is_head(i) ? 1 : 0; });
  auto ids = scan<Index>(heads, {ScanOp::kSum, ScanDirection::kForward, ScanMode::kInclusive}, exec);
  exec.parallel_for(n, [&](std::size_t i) { ids[i] -= 1; });
  return ids;
}

std::vector<Index> head_positions(const SegmentFlags& s) {
  std::vector<Index> heads;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.is_head(i)) heads.push_back(static_cast<Index>(i));
  }
  return heads;
}

std::optional<std::string> validate_segments(const SegmentFlags& s, std::size_t n) {
  if (s.size() != n) {
    return "segment flags have length " + std::to_string(s.size()) + ", expected " +
           std::to_string(n);
  }
  if (n > 0 && !s.is_head(0)) return std::string("first element is not a segment head");
  const auto flags = s.flags();
  for (std::size_t i = 0; i < n; ++i) {
    if (flags[i] > 1) return "flag at " + std::to_string(i) + " is neither 0 nor 1";
  }
  return std::nullopt;
}

void require_valid_segments(const SegmentFlags& s, std::size_t n, const char* context) {
  if (auto violation = validate_segments(s, n)) {
    throw ContractViolation(std::string(context) + ": " + *violation);
  }
}

}  // namespace seghull
