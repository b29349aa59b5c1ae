#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "seghull/executor.hpp"
#include "seghull/geometry.hpp"

namespace seghull {

struct HullResult {
  PointSet vertices;                  // unordered, in discovery order
  std::vector<std::size_t> indices;   // input index of each vertex
  std::size_t iterations = 0;         // rounds of the split loop
  std::size_t discarded = 0;          // points eliminated without becoming vertices
  std::size_t dropped_segments = 0;   // 3D segments abandoned as coplanar residue
  std::size_t candidates = 0;         // vertices reported by the split loop
  std::vector<std::string> warnings;
};

// What quickhull_3d does with the split loop's output.
//   kNone:  report every point the loop selected. This always contains the true
//           hull vertices but also points lying under reflex edges of the union
//           of tetrahedra, since each point is only tested against the faces
//           of the one segment it was assigned to.
//   kExact: run a sequential face-adjacency Quickhull over those candidates
//           and keep only its vertices.
enum class Refinement { kNone, kExact };

// Iterative 2D Quickhull over one flat array. Every round finds the farthest
// point of each segment, drops the points inside the new triangles with
// compact, and splits the survivors between the two new edges with a 2-state
// flag_permute. Returns the strict hull (no points interior to hull edges).
//
// Throws EmptyInputError for n == 0 and ContractViolation for non-finite input.
HullResult quickhull_2d(const PointSet& points, Tolerance tol = {},
                        const Executor& exec = sequential_executor());

// 3D variant: the first split uses the triangle (x-extrema line, farthest
// point from it), each round forms a tetrahedron per segment and splits with a
// 3-state flag_permute. The split loop's vertex set always contains every true
// hull vertex; see Refinement for what is reported.
//
// Throws DegenerateInputError when all points are coplanar.
HullResult quickhull_3d(const PointSet& points, Tolerance tol = {},
                        const Executor& exec = sequential_executor(),
                        Refinement refinement = Refinement::kExact);

// Dispatches on points.dim().
HullResult quickhull(const PointSet& points, Tolerance tol = {},
                     const Executor& exec = sequential_executor());

// Counterclockwise order starting at the lexicographically smallest vertex.
// Input must be the vertex set of a convex polygon; fewer than 3 vertices are
// returned unchanged.
PointSet order_hull_2d(const PointSet& vertices);

}  // namespace seghull
