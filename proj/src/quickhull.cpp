#include "seghull/quickhull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <tuple>
#include <type_traits>

#include "hull_refine.hpp"
#include "seghull/errors.hpp"
#include "seghull/primitives.hpp"
#include "seghull/segments.hpp"

namespace seghull {

namespace {

constexpr Index kNoIndex = std::numeric_limits<Index>::max();

// Element arrays of the working set. All of them move together.
struct WorkingSet {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;
  std::vector<Index> origin;  // index into the caller's PointSet
  SegmentFlags segments;

  std::size_t size() const noexcept { return origin.size(); }
};

template <class... Arrays>
void permute_all(const PermutationMap& p, const BooleanMask* live, const Executor& exec,
                 Arrays&... arrays) {
  auto apply = [&](auto& array) {
    if (array.empty() && p.dest.size() != 0) return;  // z of a 2D set
    array = live != nullptr ? scatter(array, p, *live, exec) : scatter(array, p, exec);
  };
  (apply(arrays), ...);
}

void require_input(const PointSet& points, int dim) {
  if (points.dim() != dim) {
    throw ContractViolation("quickhull_" + std::to_string(dim) + "d: expected " +
                            std::to_string(dim) + "D points");
  }
  if (points.empty()) throw EmptyInputError();
  if (!points.all_finite()) throw ContractViolation("quickhull: non-finite coordinate in input");
}

// Lexicographic (x, y[, z], index) minimum and maximum.
std::pair<std::size_t, std::size_t> lex_extrema(const PointSet& points, const Executor& exec) {
  auto key = [&](std::size_t i) {
    return std::make_tuple(points.x()[i], points.y()[i], points.dim() == 3 ? points.z()[i] : 0.0, i);
  };
  const Executor::Partition part = exec.partition(points.size());
  std::vector<std::size_t> lo(part.blocks), hi(part.blocks);
  exec.run(part.blocks, [&](std::size_t b) {
    std::size_t l = part.begin(b), h = part.begin(b);
    for (std::size_t i = part.begin(b), e = part.end(b, points.size()); i < e; ++i) {
      if (key(i) < key(l)) l = i;
      if (key(h) < key(i)) h = i;
    }
    lo[b] = l;
    hi[b] = h;
  });
  std::size_t l = lo[0], h = hi[0];
  for (std::size_t b = 1; b < part.blocks; ++b) {
    if (key(lo[b]) < key(l)) l = lo[b];
    if (key(h) < key(hi[b])) h = hi[b];
  }
  return {l, h};
}

void add_vertex(HullResult& result, const PointSet& points, std::size_t index) {
  if (points.dim() == 2) result.vertices.push_back(points.point2(index));
  else result.vertices.push_back(points.point3(index));
  result.indices.push_back(index);
}

struct Planar {
  using Task = OrientedEdge;
  using Point = Vec2;
  static constexpr std::uint32_t kStates = 2;

  struct Split {
    Task task;
    Point far;
  };

  static Point point(const WorkingSet& w, std::size_t i) { return {w.x[i], w.y[i]}; }
  static double distance(const Task& edge, Point q) { return cross2(edge.a, edge.b, q); }
  // distance() divided by this is Euclidean.
  static double scale(const Task& edge) { return edge_length(edge.a, edge.b); }
  static std::optional<std::uint32_t> classify(const Split& split, Point q, double eps) {
    return classify_two_edges(split.task.a, split.far, split.task.b, q, eps);
  }
  static Task child(const Split& split, std::uint32_t state) {
    return state == 0 ? Task{split.task.a, split.far} : Task{split.far, split.task.b};
  }
};

struct Spatial {
  using Task = OrientedFace;
  using Point = Vec3;
  static constexpr std::uint32_t kStates = 3;

  struct Split {
    Task task;
    Point far;
    std::array<OrientedFace, 3> faces;
  };

  static Point point(const WorkingSet& w, std::size_t i) { return {w.x[i], w.y[i], w.z[i]}; }
  static double distance(const Task& face, Point q) { return signed_plane_distance(face, q); }
  static double scale(const Task& face) { return norm(face.normal()); }
  static std::optional<std::uint32_t> classify(const Split& split, Point q, double eps) {
    return classify_three_faces(split.faces, q, eps);
  }
  static Task child(const Split& split, std::uint32_t state) { return split.faces[state]; }
};

template <class Geometry>
typename Geometry::Split make_split(const typename Geometry::Task& task,
                                    typename Geometry::Point far) {
  if constexpr (std::is_same_v<Geometry, Spatial>) {
    return {task, far, apex_faces(task, far)};
  } else {
    return {task, far};
  }
}

// One segment per entry of tasks; element i belongs to tasks[segment_ids[i]].
// Runs rounds until the working set is empty.
template <class Geometry>
void split_rounds(const PointSet& points, WorkingSet& w, std::vector<typename Geometry::Task> tasks,
                  double eps, const Executor& exec, HullResult& result,
                  std::vector<std::size_t>* residue = nullptr) {
  using Split = typename Geometry::Split;

  while (w.size() > 0) {
    ++result.iterations;
    const std::size_t n = w.size();
    const auto ids = segment_ids(w.segments, exec);

    std::vector<double> distance(n);
    exec.parallel_for(n, [&](std::size_t i) {
      distance[i] = Geometry::distance(tasks[static_cast<std::size_t>(ids[i])], Geometry::point(w, i));
    });

    // Farthest point per segment. Points tied at the maximum lie on a line
    // (plane) parallel to the segment's edge (face) and only the extreme ones
    // are hull vertices, so ties go to the lexicographically smallest
    // coordinates first and the lowest index after that.
    const auto farthest = segment_broadcast<double>(distance, w.segments, ScanOp::kMax, exec);
    std::vector<std::uint8_t> tied(n);
    exec.parallel_for(n, [&](std::size_t i) { tied[i] = distance[i] == farthest[i] ? 1 : 0; });
    const auto tied_count = static_cast<std::size_t>(std::count(tied.begin(), tied.end(), 1));
    if (tied_count > tasks.size()) {
      std::vector<double> key(n);
      for (const std::vector<double>* coord : {&w.x, &w.y, &w.z}) {
        if (coord->empty()) continue;
        exec.parallel_for(n, [&](std::size_t i) {
          key[i] = tied[i] ? (*coord)[i] : std::numeric_limits<double>::infinity();
        });
        const auto lowest = segment_broadcast<double>(key, w.segments, ScanOp::kMin, exec);
        exec.parallel_for(n, [&](std::size_t i) { tied[i] = tied[i] && key[i] == lowest[i] ? 1 : 0; });
      }
    }
    std::vector<Index> candidate(n);
    exec.parallel_for(n, [&](std::size_t i) {
      candidate[i] = tied[i] ? static_cast<Index>(i) : kNoIndex;
    });
    const auto far_index = segment_broadcast<Index>(candidate, w.segments, ScanOp::kMin, exec);

    const std::size_t segment_count = tasks.size();
    std::vector<Index> far_of(segment_count);
    std::vector<std::uint8_t> usable(segment_count);
    exec.parallel_for(n, [&](std::size_t i) {
      if (!w.segments.is_head(i)) return;
      const auto seg = static_cast<std::size_t>(ids[i]);
      far_of[seg] = far_index[i];
      usable[seg] = farthest[i] > eps * Geometry::scale(tasks[seg]) ? 1 : 0;
    });

    std::vector<Split> splits(segment_count);
    bool dropped = false;
    for (std::size_t seg = 0; seg < segment_count; ++seg) {
      if (!usable[seg]) {
        ++result.dropped_segments;
        dropped = true;
        continue;
      }
      const auto far = static_cast<std::size_t>(far_of[seg]);
      add_vertex(result, points, static_cast<std::size_t>(w.origin[far]));
      splits[seg] = make_split<Geometry>(tasks[seg], Geometry::point(w, far));
    }

    BooleanMask keep;
    keep.keep.resize(n);
    StateFlags states;
    states.k = Geometry::kStates;
    states.states.resize(n);
    exec.parallel_for(n, [&](std::size_t i) {
      const auto seg = static_cast<std::size_t>(ids[i]);
      if (!usable[seg] || static_cast<Index>(i) == far_of[seg]) {
        keep.keep[i] = 0;
        return;
      }
      const auto state = Geometry::classify(splits[seg], Geometry::point(w, i), eps);
      keep.keep[i] = state.has_value() ? 1 : 0;
      states.states[i] = state.value_or(0);
    });

    if (dropped && residue != nullptr) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!usable[static_cast<std::size_t>(ids[i])]) residue->push_back(w.origin[i]);
      }
    }

    // The orchestrator reads the surviving count after every compact.
    const CompactResult compacted = compact(keep, w.segments, exec);
    std::vector<Index> parent(ids.begin(), ids.end());
    permute_all(compacted.permutation, &keep, exec, w.x, w.y, w.z, w.origin, parent, states.states);
    w.segments = compacted.segments;
    result.discarded += n - compacted.permutation.out_len;
    for (std::size_t seg = 0; seg < segment_count; ++seg) {
      if (usable[seg]) --result.discarded;  // the farthest point became a vertex
    }
    if (w.size() == 0) break;

    const FlagPermuteResult permuted = flag_permute(states, w.segments, exec);
    permute_all(permuted.permutation, nullptr, exec, w.x, w.y, w.z, w.origin, parent,
                states.states);
    w.segments = permuted.segments;

    const auto child_ids = segment_ids(w.segments, exec);
    std::vector<typename Geometry::Task> children(w.segments.count_heads());
    exec.parallel_for(w.size(), [&](std::size_t i) {
      if (!w.segments.is_head(i)) return;
      children[static_cast<std::size_t>(child_ids[i])] =
          Geometry::child(splits[static_cast<std::size_t>(parent[i])], states.states[i]);
    });
    tasks = std::move(children);
  }

  if (result.dropped_segments > 0) {
    result.warnings.push_back(std::to_string(result.dropped_segments) +
                              " coplanar segment(s) dropped without a farthest point");
  }
}

// Working set of the points with keep set, as a single segment. side_key is
// compacted along with the points.
WorkingSet gather(const PointSet& points, const BooleanMask& keep, std::vector<double>& side_key,
                  const Executor& exec) {
  WorkingSet w;
  const SegmentFlags whole = SegmentFlags::single(points.size());
  const CompactResult compacted = compact(keep, whole, exec);
  side_key = scatter(side_key, compacted.permutation, keep, exec);
  w.x = scatter(points.x(), compacted.permutation, keep, exec);
  w.y = scatter(points.y(), compacted.permutation, keep, exec);
  if (points.dim() == 3) w.z = scatter(points.z(), compacted.permutation, keep, exec);
  std::vector<Index> origin(points.size());
  std::iota(origin.begin(), origin.end(), Index{0});
  w.origin = scatter(origin, compacted.permutation, keep, exec);
  w.segments = compacted.segments;
  return w;
}

// Splits the working set into the two sides of the first split.
void first_partition(WorkingSet& w, const std::vector<std::uint32_t>& side, const Executor& exec) {
  StateFlags states{side, 2};
  const FlagPermuteResult permuted = flag_permute(states, w.segments, exec);
  std::vector<std::uint32_t> moved = side;
  permute_all(permuted.permutation, nullptr, exec, w.x, w.y, w.z, w.origin, moved);
  w.segments = permuted.segments;
}

}  // namespace

namespace {

HullResult split_hull_2d(const PointSet& points, Tolerance tol, const Executor& exec) {
  HullResult result;
  result.vertices = PointSet(2);

  const double eps = tol.effective(points);
  const auto [lo, hi] = lex_extrema(points, exec);
  add_vertex(result, points, lo);
  if (points.point2(lo) == points.point2(hi)) {
    result.discarded = points.size() - 1;
    return result;
  }
  add_vertex(result, points, hi);

  const Vec2 a = points.point2(lo);
  const Vec2 b = points.point2(hi);
  const std::size_t n = points.size();
  const double line_eps = eps * edge_length(a, b);
  std::vector<double> line_distance(n);
  BooleanMask keep;
  keep.keep.resize(n);
  exec.parallel_for(n, [&](std::size_t i) {
    line_distance[i] = cross2(a, b, points.point2(i));
    keep.keep[i] = (i != lo && i != hi && std::abs(line_distance[i]) > line_eps) ? 1 : 0;
  });

  WorkingSet w = gather(points, keep, line_distance, exec);
  result.discarded = n - 2 - w.size();
  if (w.size() == 0) {
    result.warnings.push_back("all points collinear; hull is the two extreme points");
    return result;
  }

  std::vector<std::uint32_t> side(w.size());
  exec.parallel_for(w.size(), [&](std::size_t i) { side[i] = line_distance[i] > 0.0 ? 0u : 1u; });
  const bool has_upper = std::find(side.begin(), side.end(), 0u) != side.end();
  const bool has_lower = std::find(side.begin(), side.end(), 1u) != side.end();
  first_partition(w, side, exec);

  std::vector<OrientedEdge> tasks;
  if (has_upper) tasks.push_back({a, b});
  if (has_lower) tasks.push_back({b, a});
  split_rounds<Planar>(points, w, std::move(tasks), eps, exec, result);
  return result;
}

// Dropped coplanar segments may still hold vertices (points on the face's
// plane but outside its triangle), so they join the candidates here.
void refine_vertices(const PointSet& points, HullResult& result,
                     const std::vector<std::size_t>& residue, double eps) {
  std::vector<std::size_t> pool = result.indices;
  pool.insert(pool.end(), residue.begin(), residue.end());
  const auto keep = detail::exact_hull_vertices_3d(points.select(pool), eps);
  if (keep.size() == result.vertices.size() && residue.empty()) return;
  std::vector<std::size_t> indices;
  indices.reserve(keep.size());
  for (std::size_t k : keep) indices.push_back(pool[k]);
  result.vertices = points.select(indices);
  result.discarded = result.discarded + result.indices.size() - keep.size();
  result.indices = std::move(indices);
}

HullResult split_hull_3d(const PointSet& points, Tolerance tol, const Executor& exec,
                         std::vector<std::size_t>* residue) {
  HullResult result;
  result.vertices = PointSet(3);

  const double eps = tol.effective(points);
  const auto [lo, hi] = lex_extrema(points, exec);
  add_vertex(result, points, lo);
  if (points.point3(lo) == points.point3(hi)) {
    result.discarded = points.size() - 1;
    return result;
  }
  add_vertex(result, points, hi);

  const std::size_t n = points.size();
  const Vec3 a = points.point3(lo);
  const Vec3 b = points.point3(hi);
  const Vec3 axis = b - a;

  // Third corner: farthest from the extrema line, lowest index on ties.
  std::vector<double> line_distance(n);
  exec.parallel_for(n, [&](std::size_t i) {
    line_distance[i] = norm(cross(axis, points.point3(i) - a));
  });
  const auto widest = scan<double>(line_distance, {ScanOp::kMax, ScanDirection::kBackward,
                                                   ScanMode::kInclusive},
                                   exec);
  std::size_t third = 0;
  while (line_distance[third] != widest[0]) ++third;
  if (widest[0] <= eps * norm(axis)) {
    result.discarded = n - 2;
    result.warnings.push_back("all points collinear; hull is the two extreme points");
    return result;
  }

  const OrientedFace base{a, b, points.point3(third)};
  const double plane_eps = eps * norm(base.normal());
  std::vector<double> plane_distance(n);
  exec.parallel_for(n, [&](std::size_t i) {
    plane_distance[i] = signed_plane_distance(base, points.point3(i));
  });
  const bool flat = std::all_of(plane_distance.begin(), plane_distance.end(),
                                [plane_eps](double d) { return std::abs(d) <= plane_eps; });
  if (flat) {
    throw DegenerateInputError(
        "degenerate input: all points are coplanar; use the 2D hull on a planar projection");
  }
  add_vertex(result, points, third);

  BooleanMask keep;
  keep.keep.resize(n);
  exec.parallel_for(n, [&](std::size_t i) {
    keep.keep[i] = (i != lo && i != hi && i != third) ? 1 : 0;
  });
  WorkingSet w = gather(points, keep, plane_distance, exec);
  if (w.size() == 0) return result;

  // Points within eps of the plane join the front side.
  std::vector<std::uint32_t> side(w.size());
  exec.parallel_for(w.size(), [&](std::size_t i) { side[i] = plane_distance[i] >= -plane_eps ? 0u : 1u; });
  const bool has_front = std::find(side.begin(), side.end(), 0u) != side.end();
  const bool has_back = std::find(side.begin(), side.end(), 1u) != side.end();
  first_partition(w, side, exec);

  std::vector<OrientedFace> tasks;
  if (has_front) tasks.push_back(base);
  if (has_back) tasks.push_back(base.flipped());
  split_rounds<Spatial>(points, w, std::move(tasks), eps, exec, result, residue);
  return result;
}

}  // namespace

HullResult quickhull_2d(const PointSet& points, Tolerance tol, const Executor& exec) {
  require_input(points, 2);
  HullResult result = split_hull_2d(points, tol, exec);
  result.candidates = result.vertices.size();
  return result;
}

HullResult quickhull_3d(const PointSet& points, Tolerance tol, const Executor& exec,
                        Refinement refinement) {
  require_input(points, 3);
  std::vector<std::size_t> residue;
  const bool exact = refinement == Refinement::kExact;
  HullResult result = split_hull_3d(points, tol, exec, exact ? &residue : nullptr);
  result.candidates = result.vertices.size();
  if (exact) refine_vertices(points, result, residue, tol.effective(points));
  return result;
}

HullResult quickhull(const PointSet& points, Tolerance tol, const Executor& exec) {
  return points.dim() == 3 ? quickhull_3d(points, tol, exec) : quickhull_2d(points, tol, exec);
}

PointSet order_hull_2d(const PointSet& vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) return vertices;
  double cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cx += vertices.x()[i];
    cy += vertices.y()[i];
  }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> angle(n);
  for (std::size_t i = 0; i < n; ++i) {
    angle[i] = std::atan2(vertices.y()[i] - cy, vertices.x()[i] - cx);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return std::tie(angle[l], l) < std::tie(angle[r], r);
  });

  auto lex_less = [&](std::size_t l, std::size_t r) {
    return std::tie(vertices.x()[l], vertices.y()[l]) < std::tie(vertices.x()[r], vertices.y()[r]);
  };
  const auto start = std::min_element(order.begin(), order.end(), lex_less);
  std::rotate(order.begin(), start, order.end());
  return vertices.select(order);
}

}  // namespace seghull
