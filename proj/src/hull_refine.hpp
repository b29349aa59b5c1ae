#pragma once

#include <cstddef>
#include <vector>

#include "seghull/geometry.hpp"

namespace seghull::detail {

// Exact vertex set of a small 3D candidate set: sequential Quickhull with
// outside sets, horizon search and face adjacency. Returns the indices of the
// candidates that are hull vertices, in increasing order. eps is a length;
// points within eps of a face plane are treated as inside. Returns every index
// unchanged when the candidates are coplanar.
std::vector<std::size_t> exact_hull_vertices_3d(const PointSet& candidates, double eps);

}  // namespace seghull::detail
