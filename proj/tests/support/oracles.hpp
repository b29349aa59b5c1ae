#pragma once

// Sequential reference implementations used only by the tests. Each one is
// written directly from the definition of the quantity it checks and shares
// no code with the library's parallel paths.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "seghull/geometry.hpp"
#include "seghull/primitives.hpp"
#include "seghull/segments.hpp"

namespace seghull::testing {

template <class T>
T oracle_identity(ScanOp op) {
  if (op == ScanOp::kSum) return T{0};
  if (op == ScanOp::kMax) {
    return std::numeric_limits<T>::has_infinity ? -std::numeric_limits<T>::infinity()
                                                : std::numeric_limits<T>::lowest();
  }
  return std::numeric_limits<T>::has_infinity ? std::numeric_limits<T>::infinity()
                                              : std::numeric_limits<T>::max();
}

template <class T>
T oracle_combine(ScanOp op, T a, T b) {
  if (op == ScanOp::kSum) return a + b;
  if (op == ScanOp::kMax) return a < b ? b : a;
  return b < a ? b : a;
}

// Segment bounds [begin, end) by a direct sweep.
inline std::vector<std::pair<std::size_t, std::size_t>> segment_bounds(
    const std::vector<std::uint8_t>& heads) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < heads.size(); ++i) {
    if (i == 0 || heads[i]) out.push_back({i, i});
    out.back().second = i + 1;
  }
  return out;
}

template <class T>
std::vector<T> oracle_scan(const std::vector<T>& values, const std::vector<std::uint8_t>& heads,
                           ScanSpec spec) {
  std::vector<T> out(values.size());
  for (auto [begin, end] : segment_bounds(heads)) {
    const std::size_t len = end - begin;
    T acc = oracle_identity<T>(spec.op);
    for (std::size_t k = 0; k < len; ++k) {
      const std::size_t i = spec.direction == ScanDirection::kForward ? begin + k : end - 1 - k;
      if (spec.mode == ScanMode::kExclusive) {
        out[i] = acc;
        acc = oracle_combine(spec.op, acc, values[i]);
      } else {
        acc = oracle_combine(spec.op, acc, values[i]);
        out[i] = acc;
      }
    }
  }
  return out;
}

inline std::vector<std::uint8_t> random_heads(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution head(p);
  std::vector<std::uint8_t> heads(n);
  for (std::size_t i = 0; i < n; ++i) heads[i] = (i == 0 || head(rng)) ? 1 : 0;
  return heads;
}

struct GroupingOracle {
  std::vector<Index> dest;
  std::vector<std::uint8_t> heads;
};

// Per-segment stable counting sort by state.
inline GroupingOracle stable_group(const std::vector<std::uint32_t>& states,
                                   const std::vector<std::uint8_t>& heads, std::uint32_t k) {
  GroupingOracle out{std::vector<Index>(states.size()), std::vector<std::uint8_t>(states.size(), 0)};
  for (auto [begin, end] : segment_bounds(heads)) {
    std::vector<std::size_t> order;
    for (std::size_t i = begin; i < end; ++i) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return states[a] < states[b]; });
    for (std::size_t r = 0; r < order.size(); ++r) {
      out.dest[order[r]] = static_cast<Index>(begin + r);
      if (r == 0 || states[order[r]] != states[order[r - 1]]) out.heads[begin + r] = 1;
    }
  }
  (void)k;
  return out;
}

// Two-state split-and-segment: within each segment the 0-flagged elements
// go first, then the 1-flagged ones, each group in original order.
inline GroupingOracle split_and_segment(const std::vector<std::uint32_t>& flags,
                                        const std::vector<std::uint8_t>& heads) {
  GroupingOracle out{std::vector<Index>(flags.size()), std::vector<std::uint8_t>(flags.size(), 0)};
  for (auto [begin, end] : segment_bounds(heads)) {
    std::size_t zeros = 0;
    for (std::size_t i = begin; i < end; ++i) zeros += flags[i] == 0 ? 1 : 0;
    std::size_t seen_zero = 0, seen_one = 0;
    for (std::size_t i = begin; i < end; ++i) {
      if (flags[i] == 0) out.dest[i] = static_cast<Index>(begin + seen_zero++);
      else out.dest[i] = static_cast<Index>(begin + zeros + seen_one++);
    }
    if (zeros > 0) out.heads[begin] = 1;
    if (zeros < end - begin) out.heads[begin + zeros] = 1;
  }
  return out;
}

struct FilterOracle {
  std::vector<std::size_t> kept;      // original indices in order
  std::vector<std::uint8_t> heads;    // segment flags over the kept elements
};

inline FilterOracle filter(const std::vector<std::uint8_t>& keep,
                           const std::vector<std::uint8_t>& heads) {
  FilterOracle out;
  for (auto [begin, end] : segment_bounds(heads)) {
    bool first = true;
    for (std::size_t i = begin; i < end; ++i) {
      if (!keep[i]) continue;
      out.kept.push_back(i);
      out.heads.push_back(first ? 1 : 0);
      first = false;
    }
  }
  return out;
}

// (b - a) x (q - a) in long double with a fused difference of products.
inline long double cross2_extended(Vec2 a, Vec2 b, Vec2 q) {
  const long double ux = static_cast<long double>(b.x) - a.x;
  const long double uy = static_cast<long double>(b.y) - a.y;
  const long double vx = static_cast<long double>(q.x) - a.x;
  const long double vy = static_cast<long double>(q.y) - a.y;
  const long double w = uy * vx;
  const long double e = std::fmal(-uy, vx, w);
  const long double f = std::fmal(ux, vy, -w);
  return f + e;
}

// Barycentric coordinates of q in tetrahedron (p0..p3) by Gaussian elimination
// on the 4x4 system sum(l_i) = 1, sum(l_i p_i) = q.
inline std::array<double, 4> barycentric(const std::array<Vec3, 4>& p, Vec3 q) {
  double m[4][5] = {
      {1, 1, 1, 1, 1},
      {p[0].x, p[1].x, p[2].x, p[3].x, q.x},
      {p[0].y, p[1].y, p[2].y, p[3].y, q.y},
      {p[0].z, p[1].z, p[2].z, p[3].z, q.z},
  };
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    for (int c = 0; c < 5; ++c) std::swap(m[col][c], m[pivot][c]);
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double factor = m[r][col] / m[col][col];
      for (int c = col; c < 5; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return {m[0][4] / m[0][0], m[1][4] / m[1][1], m[2][4] / m[2][2], m[3][4] / m[3][3]};
}

// Strict 2D hull vertices by enumerating every ordered pair as a candidate
// edge: (i, j) is a hull edge when no point is right of i->j and every point
// on the line lies within the closed segment [i, j]. O(n^3).
inline std::set<std::pair<double, double>> hull2_all_edges(const PointSet& points) {
  std::set<std::pair<double, double>> out;
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Vec2 a = points.point2(i), b = points.point2(j);
      if (a == b) continue;
      bool supporting = true;
      for (std::size_t r = 0; r < n && supporting; ++r) {
        const Vec2 q = points.point2(r);
        const long double c = cross2_extended(a, b, q);
        if (c < 0) supporting = false;
        if (c == 0) {
          const double t = (q.x - a.x) * (b.x - a.x) + (q.y - a.y) * (b.y - a.y);
          const double len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
          if (t < 0 || t > len2) supporting = false;
        }
      }
      if (supporting) {
        out.insert({a.x, a.y});
        out.insert({b.x, b.y});
      }
    }
  }
  if (out.empty() && n > 0) out.insert({points.x()[0], points.y()[0]});
  return out;
}

inline std::set<std::tuple<double, double, double>> coordinate_set(const PointSet& points) {
  std::set<std::tuple<double, double, double>> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3 p = points.point3(i);
    out.emplace(p.x, p.y, p.z);
  }
  return out;
}

inline PointSet random_disk(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PointSet out(2);
  while (out.size() < n) {
    const double x = u(rng), y = u(rng);
    if (x * x + y * y <= 1.0) out.push_back(Vec2{x, y});
  }
  return out;
}

inline PointSet random_ball(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PointSet out(3);
  while (out.size() < n) {
    const double x = u(rng), y = u(rng), z = u(rng);
    if (x * x + y * y + z * z <= 1.0) out.push_back(Vec3{x, y, z});
  }
  return out;
}

}  // namespace seghull::testing
