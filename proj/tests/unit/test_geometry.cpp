#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "artiprior/geometry.hpp"

using namespace artiprior;
using namespace artiprior::geometry;

namespace {

constexpr double kPi = 3.14159265358979323846;

Mat3 random_rotation(Rng& rng) {
  Vec3 axis(rng.normal(), rng.normal(), rng.normal());
  while (axis.norm() < 1e-6) axis = Vec3(rng.normal(), rng.normal(), rng.normal());
  axis.normalize();
  const double angle = rng.uniform(0.0, kPi);
  return Eigen::AngleAxisd(angle, axis).toRotationMatrix();
}

Trajectory random_trajectory(Rng& rng, int n_waypoints) {
  Trajectory t;
  t.interaction = rng.coin() ? Interaction::Push : Interaction::Pull;
  for (int i = 0; i < n_waypoints; ++i) {
    Waypoint wp;
    wp.position = Vec3(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
    wp.orientation = random_rotation(rng);
    t.waypoints.push_back(wp);
  }
  return t;
}

}  // namespace

TEST_CASE("rot6d of identity and 90-degree z rotation", "[geometry]") {
  const Vec6 id6 = rot6d_from_matrix(Mat3::Identity());
  Vec6 expect;
  expect << 1, 0, 0, 0, 1, 0;
  REQUIRE((id6 - expect).cwiseAbs().maxCoeff() == 0.0);

  Mat3 rz90;
  rz90 << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  const Vec6 r6 = rot6d_from_matrix(rz90);
  Vec6 expect_z;
  expect_z << 0, 1, 0, -1, 0, 0;
  REQUIRE((r6 - expect_z).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rot6d round-trips 1000 random rotations", "[geometry]") {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Mat3 r = random_rotation(rng);
    const Mat3 back = rot6d_to_matrix(rot6d_from_matrix(r));
    REQUIRE((back - r).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("rot6d_to_matrix orthonormalizes and rejects degenerate input", "[geometry]") {
  Vec6 v;
  v << 1, 0, 0, 0, 1, 0;
  REQUIRE((rot6d_to_matrix(v) - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);

  v << 2, 0, 0, 0, 3, 0;  // scale invariance of Gram-Schmidt
  REQUIRE((rot6d_to_matrix(v) - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);

  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Vec6 r6;
    for (int k = 0; k < 6; ++k) r6[k] = rng.normal();
    if (r6.head<3>().norm() < 1e-3) continue;
    const Mat3 r = rot6d_to_matrix(r6);
    REQUIRE((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-6);
    REQUIRE(r.determinant() == Catch::Approx(1.0).margin(1e-6));
  }

  Vec6 zero = Vec6::Zero();
  REQUIRE_THROWS_AS(rot6d_to_matrix(zero), std::invalid_argument);
  Vec6 parallel;
  parallel << 1, 0, 0, 2, 0, 0;
  REQUIRE_THROWS_AS(rot6d_to_matrix(parallel), std::invalid_argument);
}

TEST_CASE("rot6d_from_matrix validates input", "[geometry]") {
  Mat3 bad = Mat3::Identity();
  bad(0, 0) = 1.5;
  REQUIRE_THROWS_AS(rot6d_from_matrix(bad), std::invalid_argument);
}

TEST_CASE("euler conversion round-trips through matrices", "[geometry]") {
  Rng rng(13);
  for (int i = 0; i < 500; ++i) {
    const Mat3 r = random_rotation(rng);
    const Mat3 back = euler_to_matrix(matrix_to_euler(r));
    REQUIRE((back - r).cwiseAbs().maxCoeff() < 1e-9);
  }
  // Near gimbal lock.
  const Mat3 locked = euler_to_matrix(Vec3(0.3, kPi / 2.0, 0.0));
  REQUIRE((euler_to_matrix(matrix_to_euler(locked)) - locked).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("compose_residual identity and analytic cases", "[geometry]") {
  Rng rng(17);
  Waypoint prev;
  prev.position = Vec3(0.1, -0.2, 0.3);
  prev.orientation = random_rotation(rng);

  const Waypoint same = compose_residual(prev, Vec3::Zero(), Vec3::Zero());
  REQUIRE((same.position - prev.position).norm() == 0.0);
  REQUIRE((same.orientation - prev.orientation).cwiseAbs().maxCoeff() < 1e-9);

  Waypoint origin;
  const Waypoint moved = compose_residual(origin, Vec3(0.01, 0, 0), Vec3::Zero());
  REQUIRE((moved.position - Vec3(0.01, 0, 0)).norm() == 0.0);
  REQUIRE((moved.orientation - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);

  const Waypoint rotated = compose_residual(origin, Vec3::Zero(), Vec3(0, 0, kPi / 2));
  Mat3 rz90;
  rz90 << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  REQUIRE((rotated.orientation - rz90).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("trajectory serialization pads with zeros", "[geometry]") {
  Rng rng(19);
  const Trajectory t3 = random_trajectory(rng, 3);
  const auto v = serialize_trajectory(t3);
  REQUIRE(v.segment<12>(18).cwiseAbs().maxCoeff() == 0.0);

  const Trajectory t5 = random_trajectory(rng, 5);
  const auto v5 = serialize_trajectory(t5);
  for (int slot = 0; slot < 5; ++slot) {
    REQUIRE(v5.segment<6>(6 * slot).cwiseAbs().maxCoeff() > 0.0);
  }

  Trajectory too_long = random_trajectory(rng, 5);
  too_long.waypoints.push_back(too_long.waypoints.back());
  REQUIRE_THROWS_AS(serialize_trajectory(too_long), std::invalid_argument);
  Trajectory empty;
  REQUIRE_THROWS_AS(serialize_trajectory(empty), std::invalid_argument);
}

TEST_CASE("trajectory serialize/deserialize round-trip", "[geometry]") {
  Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    const int n = 1 + static_cast<int>(rng.uniform_index(5));
    const Trajectory t = random_trajectory(rng, n);
    const Trajectory back = deserialize_trajectory(serialize_trajectory(t), t.interaction);
    REQUIRE(back.waypoints.size() == t.waypoints.size());
    for (size_t k = 0; k < t.waypoints.size(); ++k) {
      REQUIRE((back.waypoints[k].position - t.waypoints[k].position).cwiseAbs().maxCoeff() < 1e-5);
      REQUIRE((back.waypoints[k].orientation - t.waypoints[k].orientation).cwiseAbs().maxCoeff() < 1e-5);
    }
  }
}

TEST_CASE("cone sampling stays inside the cone", "[geometry]") {
  const Vec3 normal = Vec3(1, 2, -0.5).normalized();
  const double half = 30.0 * kPi / 180.0;

  REQUIRE((sample_cone_direction(normal, 0.0, 42) + normal).norm() == 0.0);

  Rng rng(31);
  Vec3 mean = Vec3::Zero();
  for (int i = 0; i < 10000; ++i) {
    const Vec3 d = sample_cone_direction(normal, half, rng);
    REQUIRE(d.norm() == Catch::Approx(1.0).margin(1e-9));
    const double cos_angle = d.dot(-normal);
    REQUIRE(cos_angle >= std::cos(half) - 1e-12);
    mean += d;
  }
  mean /= 10000.0;
  // Empirical mean points along -normal.
  REQUIRE(mean.normalized().dot(-normal) > 0.999);

  const Vec3 a = sample_cone_direction(normal, half, std::uint64_t{77});
  const Vec3 b = sample_cone_direction(normal, half, std::uint64_t{77});
  REQUIRE((a - b).norm() == 0.0);
}

TEST_CASE("gripper frame is right-handed and straddles horizontal bars", "[geometry]") {
  const Mat3 f = gripper_frame_from_forward(Vec3(-1, 0, 0));
  REQUIRE(is_rotation(f));
  REQUIRE((f.col(2) - Vec3(-1, 0, 0)).norm() < 1e-12);
  // Closing axis vertical for a horizontal approach.
  REQUIRE(std::abs(f.col(0).dot(Vec3::UnitZ())) > 0.99);

  Rng rng(37);
  for (int i = 0; i < 100; ++i) {
    Vec3 dir(rng.normal(), rng.normal(), rng.normal());
    if (dir.norm() < 1e-3) continue;
    REQUIRE(is_rotation(gripper_frame_from_forward(dir)));
  }
}
