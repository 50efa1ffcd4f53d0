#include <cmath>
#include <stdexcept>

#include "artiprior/artsim.hpp"

namespace artiprior::sim {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

PointCloud render_pointcloud(const ArticulatedObject& obj, double q, const CameraView& view,
                             int n_points, std::uint64_t seed) {
  if (q < obj.joint.q_min - 1e-9 || q > obj.joint.q_max + 1e-9) {
    throw std::invalid_argument("render_pointcloud: q outside joint limits");
  }

  TriMesh scene = obj.body;
  scene.append(obj.part_at(q));

  const Vec3 eye(view.distance * std::cos(view.elevation) * std::cos(view.azimuth),
                 view.distance * std::cos(view.elevation) * std::sin(view.azimuth),
                 view.distance * std::sin(view.elevation));
  const Vec3 forward = (-eye).normalized();
  const Vec3 right = forward.cross(Vec3::UnitZ()).normalized();
  const Vec3 up = right.cross(forward);
  const double tan_half = std::tan(0.5 * view.fov_deg * kPi / 180.0);

  std::vector<Vec3> pts;
  std::vector<Vec3> nrm;
  std::vector<std::uint8_t> part;
  std::vector<std::uint8_t> handle;
  const int res = view.resolution;
  for (int py = 0; py < res; ++py) {
    for (int px = 0; px < res; ++px) {
      const double ndc_x = (2.0 * (px + 0.5) / res - 1.0) * tan_half;
      const double ndc_y = (1.0 - 2.0 * (py + 0.5) / res) * tan_half;
      const Vec3 dir = (forward + ndc_x * right + ndc_y * up).normalized();
      const auto hit = raycast(scene, eye, dir, 1e-6, 10.0);
      if (!hit) continue;
      pts.push_back(hit->point);
      nrm.push_back(scene.face_normal(hit->face));
      const int group = scene.face_group[hit->face];
      part.push_back(group >= kGroupPart ? 1 : 0);
      handle.push_back(group == kGroupHandle ? 1 : 0);
    }
  }

  const int visible = static_cast<int>(pts.size());
  if (visible < n_points) {
    throw std::runtime_error("render_pointcloud: only " + std::to_string(visible) +
                             " visible pixels for " + std::to_string(n_points) + " points");
  }

  const int start = static_cast<int>(seed % static_cast<std::uint64_t>(visible));
  const auto keep = farthest_point_indices(pts, n_points, start);

  PointCloud cloud;
  cloud.points.reserve(n_points);
  for (int idx : keep) {
    cloud.points.push_back(pts[idx]);
    cloud.normals.push_back(nrm[idx]);
    cloud.part_mask.push_back(part[idx]);
    cloud.handle_mask.push_back(handle[idx]);
  }
  return cloud;
}

}  // namespace artiprior::sim
