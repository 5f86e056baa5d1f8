#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace tnt {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

inline constexpr double kGravity = 9.81;

struct Pose {
  Vec3 position = Vec3::Zero();
  Quat orientation = Quat::Identity();

  static Pose identity() { return {}; }

  Vec3 apply(const Vec3& p) const { return orientation * p + position; }
  Vec3 rotate(const Vec3& v) const { return orientation * v; }

  Pose compose(const Pose& rhs) const {
    return {position + orientation * rhs.position,
            (orientation * rhs.orientation).normalized()};
  }

  Pose inverse() const {
    Quat qi = orientation.conjugate();
    return {qi * (-position), qi};
  }
};

// Shortest-arc rotation taking unit vector a onto unit vector b.
inline Quat rotation_between(const Vec3& a, const Vec3& b) {
  return Quat::FromTwoVectors(a, b).normalized();
}

// Any unit vector orthogonal to n.
inline Vec3 orthogonal_unit(const Vec3& n) {
  Vec3 ref = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return n.cross(ref).normalized();
}

}  // namespace tnt
