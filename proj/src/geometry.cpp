#include "artiprior/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace artiprior::geometry {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

const char* to_string(Interaction t) {
  return t == Interaction::Push ? "push" : "pull";
}

Interaction interaction_from_string(const std::string& s) {
  if (s == "push") return Interaction::Push;
  if (s == "pull") return Interaction::Pull;
  throw std::invalid_argument("unknown interaction type: " + s);
}

bool is_rotation(const Mat3& r, double tol) {
  if (!r.allFinite()) return false;
  const Mat3 err = r.transpose() * r - Mat3::Identity();
  return err.cwiseAbs().maxCoeff() <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

Vec6 rot6d_from_matrix(const Mat3& r) {
  if (!is_rotation(r)) {
    throw std::invalid_argument("rot6d_from_matrix: input is not a rotation matrix");
  }
  Vec6 out;
  out.head<3>() = r.col(0);
  out.tail<3>() = r.col(1);
  return out;
}

Mat3 rot6d_to_matrix(const Vec6& r6) {
  if (!r6.allFinite()) {
    throw std::invalid_argument("rot6d_to_matrix: non-finite input");
  }
  const Vec3 a1 = r6.head<3>();
  const Vec3 a2 = r6.tail<3>();
  const double n1 = a1.norm();
  if (n1 < 1e-9) {
    throw std::invalid_argument("rot6d_to_matrix: first 3-vector is numerically zero");
  }
  const Vec3 b1 = a1 / n1;
  const Vec3 a2_orth = a2 - b1.dot(a2) * b1;
  const double n2 = a2_orth.norm();
  if (n2 < 1e-9) {
    throw std::invalid_argument("rot6d_to_matrix: input vectors are parallel");
  }
  const Vec3 b2 = a2_orth / n2;
  Mat3 out;
  out.col(0) = b1;
  out.col(1) = b2;
  out.col(2) = b1.cross(b2);
  return out;
}

Mat3 euler_to_matrix(const Vec3& e) {
  const double ca = std::cos(e[0]), sa = std::sin(e[0]);
  const double cb = std::cos(e[1]), sb = std::sin(e[1]);
  const double cc = std::cos(e[2]), sc = std::sin(e[2]);
  Mat3 rx, ry, rz;
  rx << 1, 0, 0, 0, ca, -sa, 0, sa, ca;
  ry << cb, 0, sb, 0, 1, 0, -sb, 0, cb;
  rz << cc, -sc, 0, sc, cc, 0, 0, 0, 1;
  return rx * ry * rz;
}

Vec3 matrix_to_euler(const Mat3& r) {
  // R = Rx(a) Ry(b) Rz(c)  =>  R(0,2) = sin(b).
  Vec3 e;
  const double sb = std::clamp(r(0, 2), -1.0, 1.0);
  e[1] = std::asin(sb);
  if (std::abs(sb) < 1.0 - 1e-9) {
    e[0] = std::atan2(-r(1, 2), r(2, 2));
    e[2] = std::atan2(-r(0, 1), r(0, 0));
  } else {
    // Gimbal lock: b = +-pi/2 leaves only a+-c observable; pin c = 0.
    e[0] = std::atan2(r(1, 0), r(1, 1));
    e[2] = 0.0;
  }
  return e;
}

Waypoint compose_residual(const Waypoint& prev, const Vec3& delta_pos,
                          const Vec3& delta_euler) {
  if (!delta_pos.allFinite() || !delta_euler.allFinite()) {
    throw std::invalid_argument("compose_residual: non-finite delta");
  }
  Waypoint next;
  next.position = prev.position + delta_pos;
  next.orientation = euler_to_matrix(matrix_to_euler(prev.orientation) + delta_euler);
  return next;
}

Eigen::Matrix<double, kTrajectoryDim, 1> serialize_trajectory(const Trajectory& t) {
  const int n = static_cast<int>(t.waypoints.size());
  if (n < 1 || n > kTrajectorySlots) {
    throw std::invalid_argument("serialize_trajectory: waypoint count must be 1..5");
  }
  Eigen::Matrix<double, kTrajectoryDim, 1> v = Eigen::Matrix<double, kTrajectoryDim, 1>::Zero();
  Vec3 prev_euler = Vec3::Zero();
  for (int i = 0; i < n; ++i) {
    const Vec3 euler = matrix_to_euler(t.waypoints[i].orientation);
    if (i == 0) {
      v.segment<3>(0) = t.waypoints[0].position;
      v.segment<3>(3) = euler;
    } else {
      v.segment<3>(6 * i) = t.waypoints[i].position - t.waypoints[i - 1].position;
      v.segment<3>(6 * i + 3) = euler - prev_euler;
    }
    prev_euler = euler;
  }
  return v;
}

Trajectory deserialize_trajectory(const Eigen::Matrix<double, kTrajectoryDim, 1>& v,
                                  Interaction interaction) {
  // Trailing all-zero slots are padding; slot 0 is always real.
  int n = 1;
  for (int i = kTrajectorySlots - 1; i >= 1; --i) {
    if (v.segment<6>(6 * i).cwiseAbs().maxCoeff() > 0.0) {
      n = i + 1;
      break;
    }
  }
  Trajectory t;
  t.interaction = interaction;
  Vec3 pos = v.segment<3>(0);
  Vec3 euler = v.segment<3>(3);
  t.waypoints.push_back({pos, euler_to_matrix(euler)});
  for (int i = 1; i < n; ++i) {
    pos += v.segment<3>(6 * i);
    euler += v.segment<3>(6 * i + 3);
    t.waypoints.push_back({pos, euler_to_matrix(euler)});
  }
  return t;
}

std::array<Waypoint, kTrajectorySlots> absolute_slots(const Trajectory& t) {
  const auto v = serialize_trajectory(t);
  std::array<Waypoint, kTrajectorySlots> out;
  Vec3 pos = v.segment<3>(0);
  Vec3 euler = v.segment<3>(3);
  out[0] = {pos, euler_to_matrix(euler)};
  for (int i = 1; i < kTrajectorySlots; ++i) {
    pos += v.segment<3>(6 * i);
    euler += v.segment<3>(6 * i + 3);
    out[i] = {pos, euler_to_matrix(euler)};
  }
  return out;
}

Vec3 sample_cone_direction(const Vec3& normal, double half_angle, Rng& rng) {
  if (std::abs(normal.norm() - 1.0) > 1e-6) {
    throw std::invalid_argument("sample_cone_direction: normal must be unit length");
  }
  const Vec3 axis = -normal;
  if (half_angle <= 0.0) return axis;
  // Uniform over the cap: cos(angle) uniform in [cos(half_angle), 1].
  const double cos_t = rng.uniform(std::cos(half_angle), 1.0);
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  const double phi = rng.uniform(0.0, 2.0 * kPi);
  // Orthonormal basis around the axis.
  const Vec3 ref = std::abs(axis.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  const Vec3 u = axis.cross(ref).normalized();
  const Vec3 w = axis.cross(u);
  return (cos_t * axis + sin_t * (std::cos(phi) * u + std::sin(phi) * w)).normalized();
}

Vec3 sample_cone_direction(const Vec3& normal, double half_angle, std::uint64_t seed) {
  Rng rng(seed);
  return sample_cone_direction(normal, half_angle, rng);
}

Mat3 gripper_frame_from_forward(const Vec3& forward) {
  const double n = forward.norm();
  if (n < 1e-9 || !forward.allFinite()) {
    throw std::invalid_argument("gripper_frame_from_forward: degenerate forward direction");
  }
  const Vec3 f = forward / n;
  const Vec3 ref = std::abs(f.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  const Vec3 u = f.cross(ref).normalized();
  const Vec3 c = u.cross(f);
  Mat3 out;
  out.col(0) = c;
  out.col(1) = u;
  out.col(2) = f;
  return out;
}

}  // namespace artiprior::geometry
