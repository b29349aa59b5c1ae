#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "seghull/geometry.hpp"

// Brute-force hulls used as ground truth. Same double arithmetic and tolerance
// model as the Quickhull drivers; slow on purpose.
namespace seghull::oracle {

struct OracleHull2D {
  PointSet vertices{2};              // counterclockwise, from the lexicographic minimum
  std::vector<std::size_t> indices;  // input index per vertex
};

struct OracleHull3D {
  PointSet vertices{3};
  std::vector<std::size_t> indices;  // ascending input indices
  // Supporting facets as input-index triples, oriented with outward normals.
  std::vector<std::array<std::size_t, 3>> facets;
};

inline constexpr std::size_t kMaxBruteForce3D = 128;

// Gift wrapping from the lexicographic minimum; collinear candidates resolve
// to the farthest one, so the result is the strict hull. O(nh).
OracleHull2D hull2_giftwrap(const PointSet& points, Tolerance tol = {});

// Every non-collinear triple whose plane leaves all other points on one closed
// side is a facet. O(n^4); requires 4 <= n <= kMaxBruteForce3D.
// Throws DegenerateInputError when all points are coplanar.
OracleHull3D hull3_bruteforce(const PointSet& points, Tolerance tol = {});

// true iff q lies outside the hull of points or within eps (a length) of its
// boundary.
bool contains_hull_point(const PointSet& points, Vec2 q, double eps);
bool contains_hull_point(const PointSet& points, Vec3 q, double eps);

}  // namespace seghull::oracle
