#include <random>
#include <vector>

#include "doctest.h"
#include "seghull/errors.hpp"
#include "seghull/segments.hpp"
#include "support/oracles.hpp"

using namespace seghull;
using seghull::testing::oracle_combine;
using seghull::testing::oracle_scan;
using seghull::testing::random_heads;

namespace {

std::vector<ScanSpec> all_specs() {
  std::vector<ScanSpec> out;
  for (ScanOp op : {ScanOp::kSum, ScanOp::kMax, ScanOp::kMin}) {
    for (ScanDirection d : {ScanDirection::kForward, ScanDirection::kBackward}) {
      for (ScanMode m : {ScanMode::kInclusive, ScanMode::kExclusive}) out.push_back({op, d, m});
    }
  }
  return out;
}

std::vector<Index> random_values(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<Index> v(-1000, 1000);
  std::vector<Index> out(n);
  for (auto& x : out) x = v(rng);
  return out;
}

template <class T>
std::vector<T> run_scan(const std::vector<T>& values, const std::vector<std::uint8_t>& heads,
                        ScanSpec spec, const Executor& exec = sequential_executor()) {
  return segmented_scan<T>(std::span<const T>(values), SegmentFlags(heads), spec, exec);
}

}  // namespace

TEST_SUITE("segments") {

TEST_CASE("scan examples") {
  const SegmentFlags s{1, 0, 0, 1, 0, 1, 0, 0};
  const std::vector<Index> st{0, 0, 0, 3, 0, 5, 0, 0};
  CHECK(segmented_scan<Index>(st, s, {ScanOp::kSum, ScanDirection::kForward, ScanMode::kInclusive}) ==
        std::vector<Index>{0, 0, 0, 3, 3, 5, 5, 5});

  const std::vector<Index> scan0{0, 0, 1, 0, 0, 0, 0, 0};
  CHECK(segmented_scan<Index>(scan0, s, {ScanOp::kMax, ScanDirection::kBackward, ScanMode::kInclusive}) ==
        std::vector<Index>{1, 1, 1, 0, 0, 0, 0, 0});

  const std::vector<Index> pair{5, 7};
  for (ScanSpec spec : all_specs()) {
    if (spec.mode != ScanMode::kInclusive) continue;
    CHECK(segmented_scan<Index>(pair, SegmentFlags{1, 1}, spec) == pair);
  }

  const std::vector<Index> ones{1, 1, 1, 1};
  CHECK(segmented_scan<Index>(ones, SegmentFlags{1, 0, 0, 0},
                              {ScanOp::kSum, ScanDirection::kForward, ScanMode::kExclusive}) ==
        std::vector<Index>{0, 1, 2, 3});
}

TEST_CASE("exclusive scans start from the identity at the segment boundary") {
  const std::vector<double> v{3.0, 1.0, 2.0};
  const auto fwd = segmented_scan<double>(v, SegmentFlags{1, 0, 1},
                                          {ScanOp::kMax, ScanDirection::kForward, ScanMode::kExclusive});
  CHECK(fwd[0] == -std::numeric_limits<double>::infinity());
  CHECK(fwd[1] == 3.0);
  CHECK(fwd[2] == -std::numeric_limits<double>::infinity());
  const auto bwd = segmented_scan<double>(v, SegmentFlags{1, 0, 1},
                                          {ScanOp::kMin, ScanDirection::kBackward, ScanMode::kExclusive});
  CHECK(bwd[0] == 1.0);
  CHECK(bwd[1] == std::numeric_limits<double>::infinity());
  CHECK(bwd[2] == std::numeric_limits<double>::infinity());
}

TEST_CASE("scan errors") {
  const std::vector<Index> v{1, 2, 3};
  CHECK_THROWS_AS(segmented_scan<Index>(v, SegmentFlags{1, 0}, {}), ContractViolation);
  CHECK_THROWS_AS(segmented_scan<Index>(v, SegmentFlags{0, 0, 1}, {}), ContractViolation);
  const std::vector<double> d{1.0, 2.0};
  CHECK_THROWS_AS(segmented_scan<double>(d, SegmentFlags{1, 0}, {ScanOp::kSum}), ContractViolation);
  CHECK_NOTHROW(segmented_scan<double>(d, SegmentFlags{1, 0}, {ScanOp::kMax}));
  CHECK(segmented_scan<Index>(std::span<const Index>{}, SegmentFlags{}, {}).empty());
}

TEST_CASE("head_index_broadcast") {
  CHECK(head_index_broadcast(SegmentFlags{1, 0, 0, 1, 0, 1, 0, 0}) ==
        std::vector<Index>{0, 0, 0, 3, 3, 5, 5, 5});
  CHECK(head_index_broadcast(SegmentFlags{1}) == std::vector<Index>{0});

  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 256;
    const auto heads = random_heads(rng, n, 0.2);
    std::vector<Index> expect(n);
    Index last = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (heads[i]) last = static_cast<Index>(i);
      expect[i] = last;
    }
    REQUIRE(head_index_broadcast(SegmentFlags(heads)) == expect);
  }
}

TEST_CASE("segment_ids and head_positions") {
  CHECK(segment_ids(SegmentFlags{1, 0, 0, 1, 0, 1, 0, 0}) == std::vector<Index>{0, 0, 0, 1, 1, 2, 2, 2});
  CHECK(segment_ids(SegmentFlags{1}) == std::vector<Index>{0});
  CHECK(head_positions(SegmentFlags{1, 0, 0, 1, 0, 1, 0, 0}) == std::vector<Index>{0, 3, 5});

  std::mt19937_64 rng(12);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 256;
    const auto heads = random_heads(rng, n, 0.3);
    const auto ids = segment_ids(SegmentFlags(heads));
    Index expect = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (heads[i]) ++expect;
      REQUIRE(ids[i] == expect);
    }
  }
}

TEST_CASE("validate_segments") {
  CHECK_FALSE(validate_segments(SegmentFlags{1, 0}, 2).has_value());
  CHECK(validate_segments(SegmentFlags{0, 1}, 2).has_value());
  CHECK_FALSE(validate_segments(SegmentFlags{}, 0).has_value());
  CHECK(validate_segments(SegmentFlags{1, 0}, 3).has_value());
  CHECK(validate_segments(SegmentFlags(std::vector<std::uint8_t>{1, 2}), 2).has_value());
}

TEST_CASE("single segment equals the unsegmented oracle for every ScanSpec") {
  std::mt19937_64 rng(13);
  for (ScanSpec spec : all_specs()) {
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 1 + rng() % 512;
      const auto v = random_values(rng, n);
      // plain prefix loop over the whole array
      std::vector<Index> expect(n);
      Index acc = seghull::testing::oracle_identity<Index>(spec.op);
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = spec.direction == ScanDirection::kForward ? k : n - 1 - k;
        if (spec.mode == ScanMode::kExclusive) expect[i] = acc;
        acc = oracle_combine(spec.op, acc, v[i]);
        if (spec.mode == ScanMode::kInclusive) expect[i] = acc;
      }
      REQUIRE(segmented_scan<Index>(v, SegmentFlags::single(n), spec) == expect);
      REQUIRE(scan<Index>(v, spec) == expect);
    }
  }
}

TEST_CASE("random segmented scans match the sequential oracle") {
  std::mt19937_64 rng(14);
  for (ScanSpec spec : all_specs()) {
    for (int t = 0; t < 80; ++t) {
      const std::size_t n = 1 + rng() % 512;
      const auto v = random_values(rng, n);
      const auto heads = random_heads(rng, n, t % 2 ? 0.05 : 0.3);
      REQUIRE(run_scan(v, heads, spec) == oracle_scan(v, heads, spec));
      if (spec.op != ScanOp::kSum) {
        std::vector<double> d(v.begin(), v.end());
        REQUIRE(run_scan(d, heads, spec) == oracle_scan(d, heads, spec));
      }
    }
  }
}

TEST_CASE("segment independence under concatenation") {
  std::mt19937_64 rng(15);
  for (ScanSpec spec : all_specs()) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t n1 = 1 + rng() % 200, n2 = 1 + rng() % 200;
      const auto v1 = random_values(rng, n1), v2 = random_values(rng, n2);
      const auto h1 = random_heads(rng, n1, 0.1), h2 = random_heads(rng, n2, 0.1);
      auto joined = run_scan(v1, h1, spec);
      const auto second = run_scan(v2, h2, spec);
      joined.insert(joined.end(), second.begin(), second.end());

      auto v = v1;
      v.insert(v.end(), v2.begin(), v2.end());
      auto h = h1;
      h.insert(h.end(), h2.begin(), h2.end());
      REQUIRE(run_scan(v, h, spec) == joined);
    }
  }
}

TEST_CASE("inclusive equals exclusive combined with the value") {
  std::mt19937_64 rng(16);
  for (ScanOp op : {ScanOp::kSum, ScanOp::kMax, ScanOp::kMin}) {
    for (ScanDirection d : {ScanDirection::kForward, ScanDirection::kBackward}) {
      for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + rng() % 300;
        const auto v = random_values(rng, n);
        const auto heads = random_heads(rng, n, 0.15);
        const auto inc = run_scan(v, heads, {op, d, ScanMode::kInclusive});
        const auto exc = run_scan(v, heads, {op, d, ScanMode::kExclusive});
        for (std::size_t i = 0; i < n; ++i) REQUIRE(inc[i] == oracle_combine(op, exc[i], v[i]));
      }
    }
  }
}

TEST_CASE("segment_broadcast delivers the per-segment total") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 300;
    const auto v = random_values(rng, n);
    const auto heads = random_heads(rng, n, 0.1);
    for (ScanOp op : {ScanOp::kSum, ScanOp::kMax, ScanOp::kMin}) {
      const auto got = segment_broadcast<Index>(v, SegmentFlags(heads), op);
      for (auto [b, e] : seghull::testing::segment_bounds(heads)) {
        Index total = seghull::testing::oracle_identity<Index>(op);
        for (std::size_t i = b; i < e; ++i) total = oracle_combine(op, total, v[i]);
        for (std::size_t i = b; i < e; ++i) REQUIRE(got[i] == total);
      }
    }
  }
}

TEST_CASE("results do not depend on the worker count") {
  std::mt19937_64 rng(18);
  Executor two(2, 7), eight(8, 3), wide(8, 64);
  for (ScanSpec spec : all_specs()) {
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = 1 + rng() % 3000;
      const auto v = random_values(rng, n);
      const auto heads = random_heads(rng, n, t % 3 == 0 ? 0.001 : 0.05);
      const auto base = run_scan(v, heads, spec);
      REQUIRE(run_scan(v, heads, spec, two) == base);
      REQUIRE(run_scan(v, heads, spec, eight) == base);
      REQUIRE(run_scan(v, heads, spec, wide) == base);
    }
  }
  const auto heads = random_heads(rng, 5000, 0.01);
  CHECK(segment_ids(SegmentFlags(heads), eight) == segment_ids(SegmentFlags(heads)));
  CHECK(head_index_broadcast(SegmentFlags(heads), two) == head_index_broadcast(SegmentFlags(heads)));
}

}  // TEST_SUITE
