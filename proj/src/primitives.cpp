#include "seghull/primitives.hpp"

#include <algorithm>
#include <limits>

namespace seghull {

std::size_t BooleanMask::count() const noexcept {
  return static_cast<std::size_t>(std::count_if(keep.begin(), keep.end(),
                                                [](std::uint8_t v) { return v != 0; }));
}

namespace {

constexpr ScanSpec kForwardExclusiveSum{ScanOp::kSum, ScanDirection::kForward, ScanMode::kExclusive};
constexpr ScanSpec kForwardInclusiveSum{ScanOp::kSum, ScanDirection::kForward, ScanMode::kInclusive};
constexpr ScanSpec kBackwardInclusiveMax{ScanOp::kMax, ScanDirection::kBackward,
                                         ScanMode::kInclusive};
constexpr ScanSpec kBackwardInclusiveMin{ScanOp::kMin, ScanDirection::kBackward,
                                         ScanMode::kInclusive};

void require_valid_states(const StateFlags& f, std::size_t n) {
  if (f.k == 0) throw ContractViolation("flag_permute: state count k must be at least 1");
  if (f.size() != n) throw ContractViolation("flag_permute: state and segment flags differ in length");
  const auto bad = std::find_if(f.states.begin(), f.states.end(),
                                [k = f.k](std::uint32_t v) { return v >= k; });
  if (bad != f.states.end()) {
    throw ContractViolation("flag_permute: state " + std::to_string(*bad) + " at index " +
                            std::to_string(bad - f.states.begin()) + " is not below k = " +
                            std::to_string(f.k));
  }
}

}  // namespace

FlagPermuteWorkspace flag_permute_workspace(const StateFlags& f, const SegmentFlags& s,
                                            const Executor& exec) {
  const std::size_t n = s.size();
  require_valid_segments(s, n, "flag_permute");
  require_valid_states(f, n);

  FlagPermuteWorkspace ws;
  ws.head_self.resize(n);
  exec.parallel_for(n, [&](std::size_t i) {
    ws.head_self[i] = s.is_head(i) ? static_cast<Index>(i) : 0;
  });
  ws.head_index = segmented_scan<Index>(ws.head_self, s, kForwardInclusiveSum, exec);

  ws.mask.resize(f.k);
  ws.scan.resize(f.k);
  ws.count.resize(f.k);
  for (std::uint32_t state = 0; state < f.k; ++state) {
    auto& mask = ws.mask[state];
    mask.resize(n);
    exec.parallel_for(n, [&](std::size_t i) { mask[i] = f.states[i] == state ? 1 : 0; });
    ws.scan[state] = segmented_scan<Index>(mask, s, kForwardExclusiveSum, exec);
    // Inclusive running count, then carry the segment's final value back to
    // every element.
    const auto running = segmented_scan<Index>(mask, s, kForwardInclusiveSum, exec);
    ws.count[state] = segmented_scan<Index>(running, s, kBackwardInclusiveMax, exec);
  }
  return ws;
}

FlagPermuteResult flag_permute(const StateFlags& f, const SegmentFlags& s, const Executor& exec) {
  const std::size_t n = s.size();
  const FlagPermuteWorkspace ws = flag_permute_workspace(f, s, exec);

  FlagPermuteResult result;
  result.permutation.dest.resize(n);
  result.permutation.out_len = n;
  std::vector<std::uint8_t> heads(n, 0);

  exec.parallel_for(n, [&](std::size_t id) {
    const std::uint32_t own = f.states[id];
    Index offset = 0;
    bool head = false;
    for (std::uint32_t state = 0; state < f.k; ++state) {
      if (state == own) {
        result.permutation.dest[id] = ws.head_index[id] + offset + ws.scan[state][id];
      }
      // A non-empty state group starts a segment at head + offset.
      if (ws.count[state][id] > 0 && ws.head_index[id] + offset == static_cast<Index>(id)) {
        head = true;
      }
      offset += ws.count[state][id];
    }
    heads[id] = head ? 1 : 0;
  });
  result.segments = SegmentFlags(std::move(heads));
  return result;
}

CompactResult compact(const BooleanMask& b, const SegmentFlags& s, const Executor& exec) {
  const std::size_t n = s.size();
  require_valid_segments(s, n, "compact");
  if (b.size() != n) throw ContractViolation("compact: mask and segment flags differ in length");

  std::vector<Index> keep(n);
  exec.parallel_for(n, [&](std::size_t i) { keep[i] = b.keep[i] != 0 ? 1 : 0; });

  CompactResult result;
  result.permutation.dest = scan<Index>(keep, kForwardExclusiveSum, exec);
  result.permutation.out_len =
      n == 0 ? 0 : static_cast<std::size_t>(result.permutation.dest[n - 1] + keep[n - 1]);

  // Kept elements offer their destination, the rest the min identity; a
  // backward min scan then gives each head the destination of the first kept
  // element of its segment.
  constexpr Index kNone = std::numeric_limits<Index>::max();
  std::vector<Index> offered(n);
  exec.parallel_for(n, [&](std::size_t i) {
    offered[i] = keep[i] != 0 ? result.permutation.dest[i] : kNone;
  });
  const auto first_kept = segmented_scan<Index>(offered, s, kBackwardInclusiveMin, exec);

  std::vector<std::uint8_t> heads(result.permutation.out_len, 0);
  exec.parallel_for(n, [&](std::size_t i) {
    if (s.is_head(i) && first_kept[i] != kNone) heads[static_cast<std::size_t>(first_kept[i])] = 1;
  });
  result.segments = SegmentFlags(std::move(heads));
  return result;
}

}  // namespace seghull
