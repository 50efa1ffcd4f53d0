#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "artiprior/geometry.hpp"
#include "artiprior/mesh.hpp"
#include "artiprior/rng.hpp"

namespace artiprior::sim {

enum class Category { Door, Drawer };
enum class JointType { Revolute, Prismatic };
enum class HandleKind { None, Bar, Knob };
enum class ContactMode { Free, Touching, Grasped };

const char* to_string(Category c);
Category category_from_string(const std::string& s);

// Face group tags inside the meshes.
inline constexpr int kGroupBody = 0;
inline constexpr int kGroupPart = 1;
inline constexpr int kGroupHandle = 2;

struct JointSpec {
  JointType type = JointType::Prismatic;
  Vec3 axis = Vec3::UnitX();      // unit direction; +q opens the part
  Vec3 location = Vec3::Zero();   // a point the axis line passes through
  double q_min = 0.0;
  double q_max = 1.0;
};

// Procedurally generated 1-DoF articulated shape. `body` is static; `part`
// (panel/tray plus optional handle) lives in the part frame, which coincides
// with the object frame at q = 0 and moves rigidly with the joint.
struct ArticulatedObject {
  Category category = Category::Drawer;
  std::uint64_t seed = 0;
  TriMesh body;
  TriMesh part;
  JointSpec joint;
  HandleKind handle = HandleKind::None;
  Vec3 handle_center = Vec3::Zero();  // part frame
  Vec3 handle_axis = Vec3::UnitY();   // bar direction, part frame
  std::map<std::string, double> dimensions;

  RigidTransform part_transform(double q) const;
  TriMesh part_at(double q) const;
  std::string id() const;
};

ArticulatedObject generate_shape(Category category, std::uint64_t seed);

// Viewpoint on the unit sphere in front of the shape, looking at the origin.
struct CameraView {
  double azimuth = 0.0;    // radians, [-pi/2, pi/2]
  double elevation = 0.6;  // radians, [pi/6, pi/3]
  double distance = 1.0;
  int resolution = 168;
  double fov_deg = 90.0;
};

CameraView sample_camera(Rng& rng);
CameraView sample_camera(std::uint64_t seed);

// Visible-surface samples in world coordinates.
struct PointCloud {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;
  std::vector<std::uint8_t> part_mask;
  std::vector<std::uint8_t> handle_mask;

  int size() const { return static_cast<int>(points.size()); }
};

// Depth ray-cast at view.resolution, back-projected and farthest-point
// subsampled to n_points. Throws if fewer pixels than n_points are hit.
PointCloud render_pointcloud(const ArticulatedObject& obj, double q, const CameraView& view,
                             int n_points, std::uint64_t seed = 0);

// Signed target change of the joint coordinate plus the interaction type.
// theta is radians for revolute joints, scene units for prismatic ones;
// zero is not a valid task.
struct TaskSpec {
  double theta = 0.0;
  geometry::Interaction interaction = geometry::Interaction::Push;
};

// True iff the achieved change lands within 15% relative tolerance.
bool check_success(const TaskSpec& task, double achieved_delta);

// Material point on the movable part, in the part frame.
struct ContactAnchor {
  Vec3 local_position = Vec3::Zero();
  Vec3 local_normal = Vec3::UnitX();
  bool on_handle = false;
};

struct EngineConfig {
  double fingertip_standoff = 0.02;
  double approach_cone_half_angle = 30.0 * 3.14159265358979323846 / 180.0;
  double max_finger_opening = 0.08;
  double contact_break_distance = 0.01;
  double grasp_reach = 0.05;
};

// One interaction episode on a flying point gripper. The gripper hand
// center doubles as the fingertip; fingers are bookkeeping for the state
// vector and the grasp test.
struct EpisodeState {
  const ArticulatedObject* object = nullptr;
  TaskSpec task;
  double theta0 = 0.0;
  double q = 0.0;
  geometry::Waypoint gripper;
  geometry::Waypoint init_gripper;
  Eigen::Vector2d finger_positions = Eigen::Vector2d::Zero();
  ContactMode mode = ContactMode::Free;
  ContactAnchor anchor;
  std::uint64_t reset_seed = 0;

  Vec3 contact_point() const;
  Vec3 contact_normal() const;
  Vec3 fingertip() const { return gripper.position; }
  double delta_theta() const { return q - theta0; }
  double d_gc() const { return (contact_point() - fingertip()).norm(); }
  Vec3 closing_axis() const { return gripper.orientation.col(0); }
  Vec3 forward_axis() const { return gripper.orientation.col(2); }
};

struct ContactReport {
  double d_gc = 0.0;
  double dq = 0.0;
};

// Start pose uniform over { q : q + theta stays within joint limits }.
// Throws if the task is infeasible from every start pose.
double sample_start_pose(const ArticulatedObject& obj, const TaskSpec& task, Rng& rng);

// Places the gripper fingertip `fingertip_standoff` away from the contact
// point along an approach direction drawn from the 30-degree cone around the
// inward surface normal. Passing theta0 reproduces a recorded episode
// bit-exactly together with the seed.
EpisodeState reset_episode(const ArticulatedObject& obj, const TaskSpec& task,
                           const ContactAnchor& anchor, std::uint64_t seed,
                           std::optional<double> theta0 = std::nullopt,
                           const EngineConfig& cfg = {});

// Closes the fingers at the contact point. Succeeds iff the local part
// thickness along the closing axis fits inside the finger opening; on
// success the contact is rigidly bound to the part frame and the fingertip
// snaps onto the contact point. Pull interactions only.
bool attempt_grasp(EpisodeState& state, const EngineConfig& cfg = {});

// Thickness of the part solid along `axis_world` through the contact point
// (measured a hair below the surface). Infinity when the probe never exits.
double part_thickness_along(const ArticulatedObject& obj, double q, const Vec3& point_world,
                            const Vec3& axis_world, const Vec3& outward_normal_world);

// Quasi-static step: the gripper translates to `target`; commanded contact
// displacement projects onto the part's one feasible motion. Push contact is
// unilateral (only the inward-normal component transmits, and a drawer can
// never be pushed open); grasped contact is bilateral. The joint coordinate
// is clamped to its limits.
ContactReport step_gripper(EpisodeState& state, const geometry::Waypoint& target,
                           const EngineConfig& cfg = {});

}  // namespace artiprior::sim
