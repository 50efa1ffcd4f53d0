#include <cmath>
#include <stdexcept>

#include "artiprior/artsim.hpp"

namespace artiprior::sim {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

const char* to_string(Category c) {
  return c == Category::Door ? "door" : "drawer";
}

Category category_from_string(const std::string& s) {
  if (s == "door") return Category::Door;
  if (s == "drawer") return Category::Drawer;
  throw std::invalid_argument("unknown category: " + s);
}

RigidTransform ArticulatedObject::part_transform(double q) const {
  RigidTransform t;
  if (joint.type == JointType::Prismatic) {
    t.translation = q * joint.axis;
  } else {
    t.rotation = Eigen::AngleAxisd(q, joint.axis).toRotationMatrix();
    t.translation = joint.location - t.rotation * joint.location;
  }
  return t;
}

TriMesh ArticulatedObject::part_at(double q) const {
  const RigidTransform t = part_transform(q);
  TriMesh out = part;
  for (auto& v : out.vertices) v = t.apply(v);
  return out;
}

std::string ArticulatedObject::id() const {
  return std::string(to_string(category)) + "-" + std::to_string(seed);
}

namespace {

// Bar handles are horizontal so the default gripper closing axis (vertical
// for frontal approaches) straddles them.
void add_handle(ArticulatedObject& obj, Rng& rng, const Vec3& surface_center,
                double surface_half_width) {
  const double pick = rng.uniform();
  if (pick < 0.25) {
    obj.handle = HandleKind::None;
    return;
  }
  if (pick < 0.75) {
    obj.handle = HandleKind::Bar;
    const double half_len = rng.uniform(0.3, 0.8) * surface_half_width;
    const double section = rng.uniform(0.008, 0.012);  // half thickness
    const double standoff = rng.uniform(0.03, 0.045);
    const Vec3 center = surface_center + Vec3(standoff, 0, 0);
    obj.handle_center = center;
    obj.handle_axis = Vec3::UnitY();
    obj.part.add_box(center, Vec3(section, half_len, section), kGroupHandle);
    // Mount posts at the bar ends.
    const double post = section * 0.9;
    for (double s : {-1.0, 1.0}) {
      obj.part.add_box(surface_center + Vec3(standoff / 2, s * (half_len - post), 0),
                       Vec3(standoff / 2, post, post), kGroupHandle);
    }
    obj.dimensions["handle_half_len"] = half_len;
    obj.dimensions["handle_section"] = section;
    obj.dimensions["handle_standoff"] = standoff;
  } else {
    obj.handle = HandleKind::Knob;
    const double r = rng.uniform(0.012, 0.018);
    const double standoff = rng.uniform(0.02, 0.03);
    const Vec3 center = surface_center + Vec3(standoff + r, 0, 0);
    obj.handle_center = center;
    obj.part.add_box(center, Vec3(r, r, r), kGroupHandle);
    obj.part.add_box(surface_center + Vec3(standoff / 2, 0, 0),
                     Vec3(standoff / 2, r * 0.45, r * 0.45), kGroupHandle);
    obj.dimensions["handle_radius"] = r;
    obj.dimensions["handle_standoff"] = standoff;
  }
}

ArticulatedObject make_drawer(std::uint64_t seed) {
  ArticulatedObject obj;
  obj.category = Category::Drawer;
  obj.seed = seed;
  Rng rng(Rng::mix(seed, 0xd4a3e4));

  // Cabinet shell, opening toward +x.
  const double hx = rng.uniform(0.28, 0.42);
  const double hy = rng.uniform(0.25, 0.45);
  const double hz = rng.uniform(0.25, 0.45);
  const double tw = 0.02;  // panel half thickness
  obj.body.add_box(Vec3(0, 0, hz - tw), Vec3(hx, hy, tw), kGroupBody);   // top
  obj.body.add_box(Vec3(0, 0, -hz + tw), Vec3(hx, hy, tw), kGroupBody);  // bottom
  obj.body.add_box(Vec3(0, hy - tw, 0), Vec3(hx, tw, hz - 2 * tw), kGroupBody);
  obj.body.add_box(Vec3(0, -hy + tw, 0), Vec3(hx, tw, hz - 2 * tw), kGroupBody);
  obj.body.add_box(Vec3(-hx + tw, 0, 0), Vec3(tw, hy - 2 * tw, hz - 2 * tw), kGroupBody);

  // Sliding tray: front board plus an open box behind it.
  const double gap = 0.008;
  const double fy = hy - 2 * tw - gap;  // front board half width
  const double frac = rng.uniform(0.55, 1.0);
  const double fz = frac * (hz - 2 * tw - gap);
  const double fz_center = rng.uniform(-1.0, 1.0) * (hz - 2 * tw - gap - fz);
  const double ft = 0.0125;  // front board half thickness
  const Vec3 front_center(hx - ft, 0, fz_center);
  obj.part.add_box(front_center, Vec3(ft, fy, fz), kGroupPart);

  const double tray_depth = rng.uniform(0.5, 0.85) * (2 * hx - 4 * tw);
  const double ty = fy - gap;
  const double tz = std::min(fz, hz - 2 * tw - gap) * 0.8;
  const double wall = 0.01;
  const double x0 = hx - 2 * ft;  // back of the front board
  const Vec3 tray_center(x0 - tray_depth / 2, 0, fz_center - fz + tz);
  obj.part.add_box(Vec3(tray_center.x(), ty - wall, tray_center.z()),
                   Vec3(tray_depth / 2, wall, tz), kGroupPart);
  obj.part.add_box(Vec3(tray_center.x(), -ty + wall, tray_center.z()),
                   Vec3(tray_depth / 2, wall, tz), kGroupPart);
  obj.part.add_box(Vec3(tray_center.x(), 0, fz_center - fz + wall),
                   Vec3(tray_depth / 2, ty, wall), kGroupPart);
  obj.part.add_box(Vec3(x0 - tray_depth + wall, 0, tray_center.z()),
                   Vec3(wall, ty, tz), kGroupPart);

  obj.joint.type = JointType::Prismatic;
  obj.joint.axis = Vec3::UnitX();  // +q slides the drawer open
  obj.joint.location = front_center;
  obj.joint.q_min = 0.0;
  obj.joint.q_max = rng.uniform(0.3, 0.45);

  add_handle(obj, rng, Vec3(hx, 0, fz_center), fy);

  obj.dimensions["body_hx"] = hx;
  obj.dimensions["body_hy"] = hy;
  obj.dimensions["body_hz"] = hz;
  obj.dimensions["front_half_w"] = fy;
  obj.dimensions["front_half_h"] = fz;
  obj.dimensions["front_center_z"] = fz_center;
  obj.dimensions["tray_depth"] = tray_depth;
  return obj;
}

ArticulatedObject make_door(std::uint64_t seed) {
  ArticulatedObject obj;
  obj.category = Category::Door;
  obj.seed = seed;
  Rng rng(Rng::mix(seed, 0x600d));

  const double hx = rng.uniform(0.2, 0.35);
  const double hy = rng.uniform(0.28, 0.45);
  const double hz = rng.uniform(0.3, 0.45);
  const double tw = 0.02;
  obj.body.add_box(Vec3(0, 0, hz - tw), Vec3(hx, hy, tw), kGroupBody);
  obj.body.add_box(Vec3(0, 0, -hz + tw), Vec3(hx, hy, tw), kGroupBody);
  obj.body.add_box(Vec3(0, hy - tw, 0), Vec3(hx, tw, hz - 2 * tw), kGroupBody);
  obj.body.add_box(Vec3(0, -hy + tw, 0), Vec3(hx, tw, hz - 2 * tw), kGroupBody);
  obj.body.add_box(Vec3(-hx + tw, 0, 0), Vec3(tw, hy - 2 * tw, hz - 2 * tw), kGroupBody);

  // Panel flush with the +x opening at q = 0.
  const double gap = 0.006;
  const double pt = 0.015;  // panel half thickness
  const double py = hy - 2 * tw - gap;
  const double pz = hz - 2 * tw - gap;
  const Vec3 panel_center(hx - pt, 0, 0);
  obj.part.add_box(panel_center, Vec3(pt, py, pz), kGroupPart);

  const bool hinge_left = rng.coin();
  const double hinge_y = hinge_left ? -py : py;
  obj.joint.type = JointType::Revolute;
  // Axis sign chosen so +q swings the free edge outward (+x).
  obj.joint.axis = hinge_left ? -Vec3::UnitZ() : Vec3::UnitZ();
  obj.joint.location = Vec3(hx - pt, hinge_y, 0);
  obj.joint.q_min = 0.0;
  obj.joint.q_max = rng.uniform(1.5, 2.6);

  // Handle near the free edge at mid height.
  const double handle_y = (hinge_left ? 1.0 : -1.0) * py * rng.uniform(0.55, 0.8);
  add_handle(obj, rng, Vec3(hx, handle_y, 0), py * 0.25);
  if (obj.handle != HandleKind::None) {
    // add_handle laid the bar around its surface_center; record free-edge offset.
    obj.dimensions["handle_y"] = handle_y;
  }

  obj.dimensions["body_hx"] = hx;
  obj.dimensions["body_hy"] = hy;
  obj.dimensions["body_hz"] = hz;
  obj.dimensions["panel_half_w"] = py;
  obj.dimensions["panel_half_h"] = pz;
  obj.dimensions["hinge_left"] = hinge_left ? 1.0 : 0.0;
  return obj;
}

}  // namespace

ArticulatedObject generate_shape(Category category, std::uint64_t seed) {
  return category == Category::Drawer ? make_drawer(seed) : make_door(seed);
}

CameraView sample_camera(Rng& rng) {
  CameraView view;
  view.azimuth = rng.uniform(-kPi / 2, kPi / 2);
  view.elevation = rng.uniform(kPi / 6, kPi / 3);
  view.distance = 1.0;
  return view;
}

CameraView sample_camera(std::uint64_t seed) {
  Rng rng(seed);
  return sample_camera(rng);
}

bool check_success(const TaskSpec& task, double achieved_delta) {
  if (task.theta == 0.0) {
    throw std::invalid_argument("check_success: task theta must be nonzero");
  }
  return std::abs(task.theta - achieved_delta) <= 0.15 * std::abs(task.theta);
}

}  // namespace artiprior::sim
