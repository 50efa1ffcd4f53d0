#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace artiprior::sim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 apply_dir(const Vec3& d) const { return rotation * d; }
  RigidTransform inverse() const {
    return {rotation.transpose(), -(rotation.transpose() * translation)};
  }
};

// Indexed triangle soup with a per-face group tag (used for handle / panel
// ownership). Winding is counter-clockwise seen from outside.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<Eigen::Vector3i> faces;
  std::vector<int> face_group;

  void add_box(const Vec3& center, const Vec3& half_extents, int group);
  void append(const TriMesh& other);

  Vec3 face_normal(int face) const;
  Vec3 lower_bound() const;
  Vec3 upper_bound() const;
  bool empty() const { return faces.empty(); }
};

struct RayHit {
  double t = 0.0;
  int face = -1;
  Vec3 point = Vec3::Zero();
};

// Nearest intersection of the ray origin + t*dir with t in (t_min, t_max).
std::optional<RayHit> raycast(const TriMesh& mesh, const Vec3& origin, const Vec3& dir,
                              double t_min = 1e-9, double t_max = 1e30);

// All intersections (unsorted) within the t window.
std::vector<RayHit> raycast_all(const TriMesh& mesh, const Vec3& origin, const Vec3& dir,
                                double t_min = 1e-9, double t_max = 1e30);

// Greedy farthest-point subsampling; returns k indices starting from `start`.
std::vector<int> farthest_point_indices(const std::vector<Vec3>& points, int k, int start);

}  // namespace artiprior::sim
