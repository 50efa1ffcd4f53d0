#include "artiprior/mesh.hpp"

#include <limits>
#include <stdexcept>

namespace artiprior::sim {

void TriMesh::add_box(const Vec3& c, const Vec3& h, int group) {
  const int base = static_cast<int>(vertices.size());
  // 8 corners, bit i of the index selects +/- along axis i.
  for (int i = 0; i < 8; ++i) {
    vertices.emplace_back(c.x() + ((i & 1) ? h.x() : -h.x()),
                          c.y() + ((i & 2) ? h.y() : -h.y()),
                          c.z() + ((i & 4) ? h.z() : -h.z()));
  }
  // Two CCW triangles per face, outward winding.
  static const int quads[6][4] = {
      {1, 3, 7, 5},  // +x
      {0, 4, 6, 2},  // -x
      {2, 6, 7, 3},  // +y
      {0, 1, 5, 4},  // -y
      {4, 5, 7, 6},  // +z
      {0, 2, 3, 1},  // -z
  };
  for (const auto& q : quads) {
    faces.emplace_back(base + q[0], base + q[1], base + q[2]);
    faces.emplace_back(base + q[0], base + q[2], base + q[3]);
    face_group.push_back(group);
    face_group.push_back(group);
  }
}

void TriMesh::append(const TriMesh& other) {
  const int base = static_cast<int>(vertices.size());
  vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
  for (const auto& f : other.faces) {
    faces.emplace_back(f[0] + base, f[1] + base, f[2] + base);
  }
  face_group.insert(face_group.end(), other.face_group.begin(), other.face_group.end());
}

Vec3 TriMesh::face_normal(int face) const {
  const auto& f = faces[face];
  const Vec3 e1 = vertices[f[1]] - vertices[f[0]];
  const Vec3 e2 = vertices[f[2]] - vertices[f[0]];
  return e1.cross(e2).normalized();
}

Vec3 TriMesh::lower_bound() const {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  for (const auto& v : vertices) lo = lo.cwiseMin(v);
  return lo;
}

Vec3 TriMesh::upper_bound() const {
  Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());
  for (const auto& v : vertices) hi = hi.cwiseMax(v);
  return hi;
}

namespace {

// Moller-Trumbore, double-sided.
inline bool intersect_triangle(const Vec3& o, const Vec3& d, const Vec3& v0, const Vec3& v1,
                               const Vec3& v2, double& t_out) {
  const Vec3 e1 = v1 - v0;
  const Vec3 e2 = v2 - v0;
  const Vec3 p = d.cross(e2);
  const double det = e1.dot(p);
  if (std::abs(det) < 1e-14) return false;
  const double inv = 1.0 / det;
  const Vec3 s = o - v0;
  const double u = s.dot(p) * inv;
  if (u < -1e-12 || u > 1.0 + 1e-12) return false;
  const Vec3 q = s.cross(e1);
  const double v = d.dot(q) * inv;
  if (v < -1e-12 || u + v > 1.0 + 1e-12) return false;
  t_out = e2.dot(q) * inv;
  return true;
}

}  // namespace

std::optional<RayHit> raycast(const TriMesh& mesh, const Vec3& origin, const Vec3& dir,
                              double t_min, double t_max) {
  std::optional<RayHit> best;
  for (size_t i = 0; i < mesh.faces.size(); ++i) {
    const auto& f = mesh.faces[i];
    double t;
    if (intersect_triangle(origin, dir, mesh.vertices[f[0]], mesh.vertices[f[1]],
                           mesh.vertices[f[2]], t) &&
        t > t_min && t < t_max && (!best || t < best->t)) {
      best = RayHit{t, static_cast<int>(i), origin + t * dir};
    }
  }
  return best;
}

std::vector<RayHit> raycast_all(const TriMesh& mesh, const Vec3& origin, const Vec3& dir,
                                double t_min, double t_max) {
  std::vector<RayHit> hits;
  for (size_t i = 0; i < mesh.faces.size(); ++i) {
    const auto& f = mesh.faces[i];
    double t;
    if (intersect_triangle(origin, dir, mesh.vertices[f[0]], mesh.vertices[f[1]],
                           mesh.vertices[f[2]], t) &&
        t > t_min && t < t_max) {
      hits.push_back(RayHit{t, static_cast<int>(i), origin + t * dir});
    }
  }
  return hits;
}

std::vector<int> farthest_point_indices(const std::vector<Vec3>& points, int k, int start) {
  const int n = static_cast<int>(points.size());
  if (k > n) throw std::invalid_argument("farthest_point_indices: k exceeds point count");
  std::vector<int> chosen;
  chosen.reserve(k);
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  int current = start;
  for (int i = 0; i < k; ++i) {
    chosen.push_back(current);
    int next = -1;
    double best = -1.0;
    for (int j = 0; j < n; ++j) {
      const double d = (points[j] - points[current]).squaredNorm();
      if (d < dist[j]) dist[j] = d;
      if (dist[j] > best) {
        best = dist[j];
        next = j;
      }
    }
    current = next;
  }
  return chosen;
}

}  // namespace artiprior::sim
