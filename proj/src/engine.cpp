#include <cmath>
#include <limits>
#include <stdexcept>

#include "artiprior/artsim.hpp"

namespace artiprior::sim {

Vec3 EpisodeState::contact_point() const {
  return object->part_transform(q).apply(anchor.local_position);
}

Vec3 EpisodeState::contact_normal() const {
  return object->part_transform(q).apply_dir(anchor.local_normal);
}

double sample_start_pose(const ArticulatedObject& obj, const TaskSpec& task, Rng& rng) {
  if (task.theta == 0.0) throw std::invalid_argument("sample_start_pose: zero task");
  const double lo = std::max(obj.joint.q_min, obj.joint.q_min - task.theta);
  const double hi = std::min(obj.joint.q_max, obj.joint.q_max - task.theta);
  if (lo > hi + 1e-12) {
    throw std::invalid_argument("sample_start_pose: task infeasible from every start pose");
  }
  return rng.uniform(lo, hi);
}

EpisodeState reset_episode(const ArticulatedObject& obj, const TaskSpec& task,
                           const ContactAnchor& anchor, std::uint64_t seed,
                           std::optional<double> theta0, const EngineConfig& cfg) {
  EpisodeState st;
  st.object = &obj;
  st.task = task;
  st.anchor = anchor;
  st.reset_seed = seed;

  // Separate substreams so a replay with an explicit theta0 still draws the
  // same approach direction.
  Rng root(seed);
  Rng theta_rng = root.fork(1);
  Rng approach_rng = root.fork(2);
  st.theta0 = theta0 ? *theta0 : sample_start_pose(obj, task, theta_rng);
  st.q = st.theta0;

  const Vec3 contact = st.contact_point();
  const Vec3 normal = st.contact_normal();
  const Vec3 approach =
      geometry::sample_cone_direction(normal, cfg.approach_cone_half_angle, approach_rng);
  st.gripper.position = contact - cfg.fingertip_standoff * approach;
  st.gripper.orientation = geometry::gripper_frame_from_forward(approach);
  st.init_gripper = st.gripper;
  st.mode = ContactMode::Free;
  if (task.interaction == geometry::Interaction::Pull) {
    st.finger_positions << cfg.max_finger_opening / 2, -cfg.max_finger_opening / 2;
  } else {
    st.finger_positions.setZero();  // pushing keeps a closed gripper
  }
  return st;
}

double part_thickness_along(const ArticulatedObject& obj, double q, const Vec3& point_world,
                            const Vec3& axis_world, const Vec3& outward_normal_world) {
  const TriMesh part = obj.part_at(q);
  const Vec3 inside = point_world - 1e-4 * outward_normal_world;
  const double inf = std::numeric_limits<double>::infinity();

  auto first_exit = [&](const Vec3& dir) -> double {
    double best = inf;
    for (const auto& hit : raycast_all(part, inside, dir, 1e-9, 1.0)) {
      if (part.face_normal(hit.face).dot(dir) > 1e-9 && hit.t < best) best = hit.t;
    }
    return best;
  };

  const double t_plus = first_exit(axis_world);
  const double t_minus = first_exit(-axis_world);
  return t_plus + t_minus;
}

bool attempt_grasp(EpisodeState& state, const EngineConfig& cfg) {
  if (state.task.interaction != geometry::Interaction::Pull) {
    throw std::invalid_argument("attempt_grasp: only pull interactions grasp");
  }
  if (state.d_gc() > cfg.grasp_reach) {
    throw std::invalid_argument("attempt_grasp: gripper out of reach of the contact point");
  }
  const double thickness = part_thickness_along(*state.object, state.q, state.contact_point(),
                                                state.closing_axis(), state.contact_normal());
  if (thickness > cfg.max_finger_opening) return false;

  // Fingers close around the part; the fingertip snaps onto the contact
  // point and stays rigidly bound to the part frame.
  state.gripper.position += state.contact_point() - state.fingertip();
  state.init_gripper = state.gripper;
  state.finger_positions << thickness / 2, -thickness / 2;
  state.mode = ContactMode::Grasped;
  return true;
}

namespace {

// Signed speed of the contact point along `dir` per unit of joint motion.
double contact_speed_along(const EpisodeState& st, const Vec3& dir) {
  const auto& joint = st.object->joint;
  if (joint.type == JointType::Prismatic) return joint.axis.dot(dir);
  const Vec3 p = st.contact_point();
  const Vec3 on_axis = joint.location + (p - joint.location).dot(joint.axis) * joint.axis;
  const Vec3 radial = p - on_axis;
  return joint.axis.cross(radial).dot(dir);
}

double project_displacement(const EpisodeState& st, const Vec3& dx) {
  const auto& joint = st.object->joint;
  if (joint.type == JointType::Prismatic) return joint.axis.dot(dx);
  const Vec3 p = st.contact_point();
  const Vec3 on_axis = joint.location + (p - joint.location).dot(joint.axis) * joint.axis;
  const Vec3 radial = p - on_axis;
  const double d_cj = radial.norm();
  if (d_cj < 1e-9) return 0.0;
  const Vec3 tangent = joint.axis.cross(radial) / d_cj;
  return dx.dot(tangent) / d_cj;
}

}  // namespace

ContactReport step_gripper(EpisodeState& state, const geometry::Waypoint& target,
                           const EngineConfig& cfg) {
  if (!target.position.allFinite()) {
    throw std::invalid_argument("step_gripper: non-finite target");
  }
  const auto& joint = state.object->joint;
  const Vec3 dx = target.position - state.gripper.position;

  double dq_raw = 0.0;
  if (state.mode == ContactMode::Grasped) {
    dq_raw = project_displacement(state, dx);
  } else {
    const Vec3 n_in = -state.contact_normal();
    const double gap = (state.contact_point() - state.fingertip()).dot(n_in);
    const double push = dx.dot(n_in) - std::max(gap, 0.0);
    if (push > 0.0) {
      const double speed = contact_speed_along(state, n_in);
      if (std::abs(speed) > 1e-8) dq_raw = push / speed;
      // Unilateral contact: without a grasp a drawer can be pushed shut but
      // never dragged open.
      if (joint.type == JointType::Prismatic) dq_raw = std::min(dq_raw, 0.0);
      state.mode = ContactMode::Touching;
    }
  }

  const double q_new = std::clamp(state.q + dq_raw, joint.q_min, joint.q_max);
  const double dq = q_new - state.q;
  state.q = q_new;
  state.gripper = target;

  if (state.mode == ContactMode::Touching) {
    const double separation =
        (state.contact_point() - state.fingertip()).dot(-state.contact_normal());
    if (separation > cfg.contact_break_distance) state.mode = ContactMode::Free;
  }
  return ContactReport{state.d_gc(), dq};
}

}  // namespace artiprior::sim
