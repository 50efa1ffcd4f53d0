#pragma once

#include <Eigen/Dense>
#include <vector>

#include "artiprior/rng.hpp"

namespace artiprior::geometry {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;

enum class Interaction { Push, Pull };

const char* to_string(Interaction t);
Interaction interaction_from_string(const std::string& s);

// One 6-DoF end-effector pose. Orientation is kept as a rotation matrix;
// euler angles appear only at serialization boundaries.
struct Waypoint {
  Vec3 position = Vec3::Zero();
  Mat3 orientation = Mat3::Identity();
};

// Open-loop gripper trajectory: 1..5 waypoints commanded after the initial
// placement pose, plus the interaction type. Serializes to a fixed 30-vector
// (5 slots of position + euler, residual form, zero padded).
struct Trajectory {
  std::vector<Waypoint> waypoints;
  Interaction interaction = Interaction::Push;
};

inline constexpr int kTrajectorySlots = 5;
inline constexpr int kTrajectoryDim = 30;
inline constexpr double kOrthonormalTol = 1e-6;

bool is_rotation(const Mat3& r, double tol = kOrthonormalTol);

// First two columns of R, stacked. Inverse reconstructs the matrix by
// Gram-Schmidt, so the pair round-trips exactly for valid rotations.
Vec6 rot6d_from_matrix(const Mat3& r);
Mat3 rot6d_to_matrix(const Vec6& r6);

// Intrinsic XYZ convention: R = Rx(e0) * Ry(e1) * Rz(e2).
Mat3 euler_to_matrix(const Vec3& euler);
Vec3 matrix_to_euler(const Mat3& r);

// Applies an additive pose residual: position offset plus euler-space
// orientation offset on top of the previous waypoint.
Waypoint compose_residual(const Waypoint& prev, const Vec3& delta_pos,
                          const Vec3& delta_euler);

// Layout: slot 0 holds wp0 absolutely (position, euler); slots 1..4 hold
// residuals to the previous waypoint; slots past the trajectory length are
// exactly zero.
Eigen::Matrix<double, kTrajectoryDim, 1> serialize_trajectory(const Trajectory& t);
Trajectory deserialize_trajectory(const Eigen::Matrix<double, kTrajectoryDim, 1>& v,
                                  Interaction interaction);

// Absolute waypoint poses of all 5 serialization slots (padding repeats the
// final pose). Used by the trajectory distance metric.
std::array<Waypoint, kTrajectorySlots> absolute_slots(const Trajectory& t);

// Unit direction uniform over the spherical cap of `half_angle` around
// -normal. half_angle == 0 returns exactly -normal.
Vec3 sample_cone_direction(const Vec3& normal, double half_angle, Rng& rng);
Vec3 sample_cone_direction(const Vec3& normal, double half_angle, std::uint64_t seed);

// Right-handed orthonormal gripper frame for an approach direction: columns
// are (closing axis, finger plane normal, forward). For near-horizontal
// approaches the closing axis comes out near-vertical, so horizontal bar
// handles get straddled rather than swallowed lengthwise.
Mat3 gripper_frame_from_forward(const Vec3& forward);

}  // namespace artiprior::geometry
