#include "seghull/oracle.hpp"

#include <algorithm>
#include <set>
#include <cmath>
#include <string>
#include <tuple>

#include "seghull/errors.hpp"

namespace seghull::oracle {

namespace {

double squared_length(Vec2 v) { return v.x * v.x + v.y * v.y; }

}  // namespace

OracleHull2D hull2_giftwrap(const PointSet& points, Tolerance tol) {
  if (points.dim() != 2) throw ContractViolation("hull2_giftwrap: expected 2D points");
  OracleHull2D hull;
  const std::size_t n = points.size();
  if (n == 0) return hull;
  const double eps = tol.effective(points);

  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::tie(points.x()[i], points.y()[i]) < std::tie(points.x()[start], points.y()[start])) {
      start = i;
    }
  }

  std::size_t current = start;
  for (std::size_t step = 0; step <= n; ++step) {
    hull.vertices.push_back(points.point2(current));
    hull.indices.push_back(current);
    const Vec2 c = points.point2(current);
    std::size_t next = n;
    for (std::size_t r = 0; r < n; ++r) {
      const Vec2 q = points.point2(r);
      if (q == c) continue;
      if (next == n) {
        next = r;
        continue;
      }
      const Vec2 best = points.point2(next);
      const double turn = cross2(c, best, q);
      const double turn_eps = eps * edge_length(c, best);
      if (turn < -turn_eps) {
        next = r;
      } else if (std::abs(turn) <= turn_eps) {
        const Vec2 ahead = best - c;
        const Vec2 offset = q - c;
        const bool forward = ahead.x * offset.x + ahead.y * offset.y > 0.0;
        if (forward && squared_length(offset) > squared_length(ahead)) next = r;
      }
    }
    if (next == n || points.point2(next) == points.point2(start)) break;
    current = next;
  }
  return hull;
}

OracleHull3D hull3_bruteforce(const PointSet& points, Tolerance tol) {
  if (points.dim() != 3) throw ContractViolation("hull3_bruteforce: expected 3D points");
  const std::size_t n = points.size();
  if (n < 4 || n > kMaxBruteForce3D) {
    throw ContractViolation("hull3_bruteforce: supports 4 to " + std::to_string(kMaxBruteForce3D) +
                            " points, got " + std::to_string(n));
  }
  const double eps = tol.effective(points);

  OracleHull3D hull;
  std::vector<std::uint8_t> on_hull(n, 0);
  std::set<std::vector<std::size_t>> planes;
  bool solid = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        OrientedFace face{points.point3(i), points.point3(j), points.point3(k)};
        const double area2 = norm(face.normal());
        const double longest = std::max({norm(face.b - face.a), norm(face.c - face.b),
                                         norm(face.a - face.c)});
        // Height over the longest side within eps: collinear triple.
        if (area2 <= eps * longest) continue;
        std::size_t above = 0, below = 0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == i || r == j || r == k) continue;
          const double d = signed_plane_distance(face, points.point3(r)) / area2;
          if (d > eps) ++above;
          else if (d < -eps) ++below;
        }
        if (above + below > 0) solid = true;
        if (above > 0 && below > 0) continue;
        if (above > 0) hull.facets.push_back({i, k, j});
        else hull.facets.push_back({i, j, k});

        // The supporting plane may hold more than three points; only the
        // corners of their planar hull are vertices.
        std::vector<std::size_t> coplanar;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == i || r == j || r == k ||
              std::abs(signed_plane_distance(face, points.point3(r)) / area2) <= eps) {
            coplanar.push_back(r);
          }
        }
        if (coplanar.size() == 3) {
          on_hull[i] = on_hull[j] = on_hull[k] = 1;
          continue;
        }
        if (!planes.insert(coplanar).second) continue;
        const Vec3 nrm = face.normal();
        const double ax = std::abs(nrm.x), ay = std::abs(nrm.y), az = std::abs(nrm.z);
        PointSet flat(2);
        for (std::size_t r : coplanar) {
          const Vec3 q = points.point3(r);
          if (ax >= ay && ax >= az) flat.push_back(Vec2{q.y, q.z});
          else if (ay >= az) flat.push_back(Vec2{q.z, q.x});
          else flat.push_back(Vec2{q.x, q.y});
        }
        for (std::size_t v : hull2_giftwrap(flat, tol).indices) on_hull[coplanar[v]] = 1;
      }
    }
  }
  if (!solid) throw DegenerateInputError("hull3_bruteforce: all points are coplanar");
  for (std::size_t i = 0; i < n; ++i) {
    if (!on_hull[i]) continue;
    hull.vertices.push_back(points.point3(i));
    hull.indices.push_back(i);
  }
  return hull;
}

bool contains_hull_point(const PointSet& points, Vec2 q, double eps) {
  const OracleHull2D hull = hull2_giftwrap(points);
  const std::size_t h = hull.vertices.size();
  if (h < 3) return true;
  for (std::size_t i = 0; i < h; ++i) {
    const Vec2 u = hull.vertices.point2(i);
    const Vec2 v = hull.vertices.point2((i + 1) % h);
    const double inside = cross2(u, v, q) / std::sqrt(squared_length(v - u));
    if (inside <= eps) return true;
  }
  return false;
}

bool contains_hull_point(const PointSet& points, Vec3 q, double eps) {
  const OracleHull3D hull = hull3_bruteforce(points);
  for (const auto& [i, j, k] : hull.facets) {
    const OrientedFace face{points.point3(i), points.point3(j), points.point3(k)};
    if (normalized_plane_distance(face, q) >= -eps) return true;
  }
  return false;
}

}  // namespace seghull::oracle
