#include "hull_refine.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <tuple>
#include <unordered_map>

namespace seghull::detail {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Face {
  std::array<std::size_t, 3> v{};           // counterclockwise seen from outside
  std::array<std::size_t, 3> neighbor{};    // across edge (v[i], v[i+1])
  Vec3 unit_normal;
  double offset = 0.0;                      // unit_normal . x on the plane
  std::vector<std::size_t> outside;
  std::size_t seen_in = 0;  // expansion that last visited this face
  bool visible = false;
  bool alive = true;
};

class Builder {
 public:
  Builder(const PointSet& points, double eps) : points_(points), eps_(eps) {}

  std::vector<std::size_t> run() {
    const std::size_t n = points_.size();
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (!initial_simplex()) return all;

    for (std::size_t q = 0; q < n; ++q) {
      if (std::find(simplex_.begin(), simplex_.end(), q) != simplex_.end()) continue;
      assign(q, first_faces_);
    }
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      if (faces_[f].alive && !faces_[f].outside.empty()) expand(f);
    }

    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      if (!faces_[f].alive) continue;
      for (std::size_t v : faces_[f].v) incident[v].push_back(f);
    }
    std::vector<std::size_t> vertices;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_corner(incident[i])) vertices.push_back(i);
    }
    return vertices;
  }

 private:
  Vec3 at(std::size_t i) const { return points_.point3(i); }

  double height(const Face& face, std::size_t q) const {
    return dot(face.unit_normal, at(q)) - face.offset;
  }

  // A vertex whose faces lie in one plane sits inside a flat region, and one
  // whose faces lie in two sits on a crease. Either way it is not extreme.
  // This happens when later points land exactly on an earlier face.
  bool is_corner(const std::vector<std::size_t>& faces) const {
    std::vector<std::size_t> planes;
    for (std::size_t f : faces) {
      const Face& face = faces_[f];
      if (face.unit_normal == Vec3{}) continue;
      const bool known = std::any_of(planes.begin(), planes.end(), [&](std::size_t r) {
        return std::all_of(face.v.begin(), face.v.end(),
                           [&](std::size_t v) { return std::abs(height(faces_[r], v)) <= eps_; });
      });
      if (!known) planes.push_back(f);
      if (planes.size() >= 3) return true;
    }
    return false;
  }

  bool initial_simplex() {
    const std::size_t n = points_.size();
    if (n < 4) return false;
    auto lex = [&](std::size_t i) { return std::make_tuple(points_.x()[i], points_.y()[i], points_.z()[i]); };
    std::size_t a = 0, b = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (lex(i) < lex(a)) a = i;
      if (lex(b) < lex(i)) b = i;
    }
    const Vec3 axis = at(b) - at(a);
    const double axis_len = norm(axis);
    if (axis_len == 0.0) return false;

    std::size_t c = kNone;
    double widest = eps_;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = norm(cross(axis, at(i) - at(a))) / axis_len;
      if (d > widest) {
        widest = d;
        c = i;
      }
    }
    if (c == kNone) return false;

    const Vec3 normal = cross(axis, at(c) - at(a));
    const double normal_len = norm(normal);
    std::size_t d = kNone;
    double tallest = eps_;
    for (std::size_t i = 0; i < n; ++i) {
      const double h = std::abs(dot(normal, at(i) - at(a))) / normal_len;
      if (h > tallest) {
        tallest = h;
        d = i;
      }
    }
    if (d == kNone) return false;

    // Orient so the base (a, b, c) faces away from d.
    if (dot(normal, at(d) - at(a)) > 0.0) std::swap(b, c);
    simplex_ = {a, b, c, d};
    const std::size_t f0 = add_face(a, b, c);
    const std::size_t f1 = add_face(a, d, b);
    const std::size_t f2 = add_face(b, d, c);
    const std::size_t f3 = add_face(c, d, a);
    faces_[f0].neighbor = {f1, f2, f3};
    faces_[f1].neighbor = {f3, f2, f0};
    faces_[f2].neighbor = {f1, f3, f0};
    faces_[f3].neighbor = {f2, f1, f0};
    first_faces_ = {f0, f1, f2, f3};
    return true;
  }

  std::size_t add_face(std::size_t a, std::size_t b, std::size_t c) {
    Face face;
    face.v = {a, b, c};
    face.neighbor = {kNone, kNone, kNone};
    const Vec3 n = cross(at(b) - at(a), at(c) - at(a));
    const double len = norm(n);
    face.unit_normal = len > 0.0 ? Vec3{n.x / len, n.y / len, n.z / len} : Vec3{};
    face.offset = dot(face.unit_normal, at(a));
    faces_.push_back(std::move(face));
    return faces_.size() - 1;
  }

  // Gives q to the first listed face it is outside of; otherwise q is inside.
  void assign(std::size_t q, const std::vector<std::size_t>& candidates) {
    for (std::size_t f : candidates) {
      if (height(faces_[f], q) > eps_) {
        faces_[f].outside.push_back(q);
        return;
      }
    }
  }

  std::size_t edge_index(const Face& face, std::size_t from, std::size_t to) const {
    for (std::size_t i = 0; i < 3; ++i) {
      if (face.v[i] == from && face.v[(i + 1) % 3] == to) return i;
    }
    return kNone;
  }

  void expand(std::size_t start) {
    const Face& seed = faces_[start];
    std::size_t apex = seed.outside.front();
    for (std::size_t q : seed.outside) {
      if (height(seed, q) > height(seed, apex)) apex = q;
    }

    // Faces that see the apex form a connected patch around start.
    const std::size_t stamp = ++expansions_;
    std::vector<std::size_t> visible{start};
    faces_[start].seen_in = stamp;
    faces_[start].visible = true;
    for (std::size_t k = 0; k < visible.size(); ++k) {
      for (std::size_t nb : faces_[visible[k]].neighbor) {
        Face& face = faces_[nb];
        if (face.seen_in == stamp) continue;
        face.seen_in = stamp;
        face.visible = height(face, apex) > eps_;
        if (face.visible) visible.push_back(nb);
      }
    }

    struct HorizonEdge {
      std::size_t from, to, outer;
    };
    std::vector<HorizonEdge> horizon;
    for (std::size_t f : visible) {
      for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t nb = faces_[f].neighbor[i];
        if (faces_[nb].seen_in != stamp || !faces_[nb].visible) horizon.push_back({faces_[f].v[i], faces_[f].v[(i + 1) % 3], nb});
      }
    }

    std::vector<std::size_t> orphans;
    for (std::size_t f : visible) {
      faces_[f].alive = false;
      for (std::size_t q : faces_[f].outside) {
        if (q != apex) orphans.push_back(q);
      }
      faces_[f].outside.clear();
      faces_[f].outside.shrink_to_fit();
    }

    std::vector<std::size_t> created;
    std::unordered_map<std::size_t, std::size_t> starting_at;
    for (const HorizonEdge& e : horizon) {
      const std::size_t f = add_face(e.from, e.to, apex);
      created.push_back(f);
      starting_at[e.from] = f;
      faces_[f].neighbor[0] = e.outer;
      Face& outer = faces_[e.outer];
      const std::size_t back = edge_index(outer, e.to, e.from);
      if (back != kNone) outer.neighbor[back] = f;
    }
    for (std::size_t f : created) {
      Face& face = faces_[f];
      const std::size_t next = starting_at.at(face.v[1]);
      face.neighbor[1] = next;
      faces_[next].neighbor[2] = f;
    }

    std::sort(orphans.begin(), orphans.end());
    for (std::size_t q : orphans) assign(q, created);
  }

  const PointSet& points_;
  double eps_;
  std::vector<Face> faces_;
  std::array<std::size_t, 4> simplex_{};
  std::vector<std::size_t> first_faces_;
  std::size_t expansions_ = 0;
};

}  // namespace

std::vector<std::size_t> exact_hull_vertices_3d(const PointSet& candidates, double eps) {
  return Builder(candidates, eps).run();
}

}  // namespace seghull::detail
