#include "seghull/geometry.hpp"

#include <algorithm>
#include <limits>

#include "seghull/errors.hpp"

namespace seghull {

PointSet::PointSet(int dim) : dim_(dim) {
  if (dim != 2 && dim != 3) throw ContractViolation("PointSet: dimension must be 2 or 3");
}

PointSet::PointSet(std::vector<double> x, std::vector<double> y)
    : dim_(2), x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) throw ContractViolation("PointSet: coordinate arrays differ in length");
}

PointSet::PointSet(std::vector<double> x, std::vector<double> y, std::vector<double> z)
    : dim_(3), x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
  if (x_.size() != y_.size() || x_.size() != z_.size()) {
    throw ContractViolation("PointSet: coordinate arrays differ in length");
  }
}

void PointSet::push_back(Vec2 p) {
  if (dim_ != 2) throw ContractViolation("PointSet: 2D point added to a 3D set");
  x_.push_back(p.x);
  y_.push_back(p.y);
}

void PointSet::push_back(Vec3 p) {
  if (dim_ != 3) throw ContractViolation("PointSet: 3D point added to a 2D set");
  x_.push_back(p.x);
  y_.push_back(p.y);
  z_.push_back(p.z);
}

void PointSet::reserve(std::size_t n) {
  x_.reserve(n);
  y_.reserve(n);
  if (dim_ == 3) z_.reserve(n);
}

PointSet PointSet::select(const std::vector<std::size_t>& indices) const {
  PointSet out(dim_);
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    out.x_.push_back(x_.at(i));
    out.y_.push_back(y_.at(i));
    if (dim_ == 3) out.z_.push_back(z_.at(i));
  }
  return out;
}

bool PointSet::all_finite() const noexcept {
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double c) { return std::isfinite(c); });
  };
  return finite(x_) && finite(y_) && finite(z_);
}

double PointSet::bbox_diagonal() const noexcept {
  if (empty()) return 0.0;
  auto extent = [](const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
  };
  const double dx = extent(x_);
  const double dy = extent(y_);
  const double dz = extent(z_);
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double normalized_plane_distance(const OrientedFace& face, Vec3 q) {
  const Vec3 n = face.normal();
  const double len = norm(n);
  return len > 0.0 ? dot(n, q - face.a) / len : 0.0;
}

bool point_in_triangle(Vec2 a, Vec2 b, Vec2 c, Vec2 q, double eps) {
  return cross2(a, b, q) >= -eps * edge_length(a, b) &&
         cross2(b, c, q) >= -eps * edge_length(b, c) &&
         cross2(c, a, q) >= -eps * edge_length(c, a);
}

std::array<OrientedFace, 3> apex_faces(const OrientedFace& base, Vec3 apex) {
  std::array<OrientedFace, 3> faces{OrientedFace{base.a, base.b, apex},
                                    OrientedFace{base.b, base.c, apex},
                                    OrientedFace{base.c, base.a, apex}};
  const std::array<Vec3, 3> opposite{base.c, base.a, base.b};
  for (std::size_t i = 0; i < 3; ++i) {
    if (signed_plane_distance(faces[i], opposite[i]) > 0.0) faces[i] = faces[i].flipped();
  }
  return faces;
}

namespace {

bool beyond(const OrientedFace& face, Vec3 q, double eps) {
  const Vec3 n = face.normal();
  return dot(n, q - face.a) > eps * norm(n);
}

}  // namespace

bool point_in_tetrahedron(const OrientedFace& base, Vec3 apex, Vec3 q, double eps) {
  if (beyond(base.flipped(), q, eps)) return false;
  for (const auto& face : apex_faces(base, apex)) {
    if (beyond(face, q, eps)) return false;
  }
  return true;
}

std::optional<std::uint32_t> classify_two_edges(Vec2 a, Vec2 far, Vec2 b, Vec2 q, double eps) {
  if (point_in_triangle(a, b, far, q, eps)) return std::nullopt;
  // Same expressions as the triangle test, negated: how far q is beyond each
  // of the two new edges.
  const double beyond_first = -cross2(far, a, q);
  const double beyond_second = -cross2(b, far, q);
  const bool first = beyond_first > eps * edge_length(a, far);
  const bool second = beyond_second > eps * edge_length(far, b);
  if (first && second) return beyond_second > beyond_first ? 1u : 0u;
  if (second) return 1u;
  if (first) return 0u;
  // Only reachable when q violates the precondition (not left of a->b).
  return beyond_second > beyond_first ? 1u : 0u;
}

std::optional<std::uint32_t> classify_three_faces(const std::array<OrientedFace, 3>& faces, Vec3 q,
                                                  double eps) {
  std::array<double, 3> distance{};
  bool outside = false;
  for (std::size_t i = 0; i < 3; ++i) {
    distance[i] = normalized_plane_distance(faces[i], q);
    if (distance[i] > eps) outside = true;
  }
  if (!outside) return std::nullopt;
  std::uint32_t best = 0;
  double best_distance = -std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 0; i < 3; ++i) {
    const double d = distance[i];
    if (d > best_distance) {
      best_distance = d;
      best = i;
    }
  }
  return best;
}

}  // namespace seghull
