#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace seghull {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

// Points in structure-of-arrays layout. z is empty for 2D sets.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int dim);
  PointSet(std::vector<double> x, std::vector<double> y);
  PointSet(std::vector<double> x, std::vector<double> y, std::vector<double> z);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return x_.size(); }
  bool empty() const noexcept { return x_.empty(); }

  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& y() const noexcept { return y_; }
  const std::vector<double>& z() const noexcept { return z_; }

  Vec2 point2(std::size_t i) const { return {x_[i], y_[i]}; }
  Vec3 point3(std::size_t i) const { return {x_[i], y_[i], dim_ == 3 ? z_[i] : 0.0}; }

  void push_back(Vec2 p);
  void push_back(Vec3 p);
  void reserve(std::size_t n);

  // Subset in the given order.
  PointSet select(const std::vector<std::size_t>& indices) const;

  bool all_finite() const noexcept;
  // Length of the axis-aligned bounding box diagonal; 0 for empty sets.
  double bbox_diagonal() const noexcept;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  int dim_ = 2;
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> z_;
};

// Relative tolerance. The effective length tolerance of a hull invocation is
// eps_rel times the bounding-box diagonal of its input.
struct Tolerance {
  double eps_rel = 1e-12;

  double effective(const PointSet& points) const noexcept {
    return eps_rel * points.bbox_diagonal();
  }
};

// Directed edge a->b; the points it owns lie strictly to its left.
struct OrientedEdge {
  Vec2 a;
  Vec2 b;
};

// Triangle whose normal (b-a)x(c-a) points toward the points it owns.
struct OrientedFace {
  Vec3 a;
  Vec3 b;
  Vec3 c;

  Vec3 normal() const { return cross(b - a, c - a); }
  OrientedFace flipped() const { return {a, c, b}; }
};

// (b-a) x (q-a): positive iff q is strictly left of a->b; |value| is twice the
// triangle area, i.e. the distance to the line scaled by |b-a|.
inline double cross2(Vec2 a, Vec2 b, Vec2 q) {
  return (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
}

// n.(q-a) with n = (b-a)x(c-a); unnormalized, positive on the outward side.
inline double signed_plane_distance(const OrientedFace& face, Vec3 q) {
  return dot(face.normal(), q - face.a);
}

// Euclidean distance to the face plane, signed like signed_plane_distance.
double normalized_plane_distance(const OrientedFace& face, Vec3 q);

// All tolerances below are lengths: a side test passes when q is no more than
// eps beyond the edge line or face plane.
inline double edge_length(Vec2 a, Vec2 b) { return std::hypot(b.x - a.x, b.y - a.y); }

// Closed inclusion in the CCW triangle (a, b, c); boundary points (within eps
// of an edge line) count as inside.
bool point_in_triangle(Vec2 a, Vec2 b, Vec2 c, Vec2 q, double eps);

// Closed inclusion in the tetrahedron spanned by base and an apex on the
// outward side of base.
bool point_in_tetrahedron(const OrientedFace& base, Vec3 apex, Vec3 q, double eps);

// The three faces of tetrahedron(base, apex) that contain apex, each oriented
// away from the base vertex it does not contain: (a,b,apex), (b,c,apex),
// (c,a,apex).
std::array<OrientedFace, 3> apex_faces(const OrientedFace& base, Vec3 apex);

// For q strictly left of a->b, with far the farthest point of the segment:
// nullopt (discard) when q lies in the closed triangle (a, b, far); otherwise
// 0 when q is beyond edge a->far, 1 when beyond far->b. When tolerance makes
// both fire, the larger cross2 wins and ties go to 0.
std::optional<std::uint32_t> classify_two_edges(Vec2 a, Vec2 far, Vec2 b, Vec2 q, double eps);

// For q on the outward side of a segment's base face: nullopt when q is within
// eps of the inner side of all three apex faces (inside the tetrahedron);
// otherwise the face with the largest Euclidean distance, lowest index on ties.
std::optional<std::uint32_t> classify_three_faces(const std::array<OrientedFace, 3>& faces, Vec3 q,
                                                  double eps);

}  // namespace seghull
