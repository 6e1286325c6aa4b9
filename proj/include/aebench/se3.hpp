#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <cstdint>
#include <vector>

#include "aebench/errors.hpp"

namespace aebench {

// Rigid pose: x_world = rotation * x_local + translation. Composition and
// inverse ignore timestamps; callers assign them.
struct PoseSE3 {
  Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  std::int64_t timestamp_ns = 0;

  Eigen::Matrix3d rotation_matrix() const { return rotation.toRotationMatrix(); }

  PoseSE3 inverse() const {
    PoseSE3 out;
    out.rotation = rotation.conjugate();
    out.translation = -(out.rotation * translation);
    out.timestamp_ns = timestamp_ns;
    return out;
  }

  PoseSE3 operator*(const PoseSE3& rhs) const {
    PoseSE3 out;
    out.rotation = rotation * rhs.rotation;
    out.rotation.normalize();
    out.translation = rotation * rhs.translation + translation;
    out.timestamp_ns = timestamp_ns;
    return out;
  }
};

// Rotation angle in radians, in [0, pi].
double rotation_angle_rad(const Eigen::Quaterniond& q);

struct Trajectory {
  std::vector<PoseSE3> poses;
};

// Throws DomainError unless >= 2 poses with strictly increasing timestamps
// and orthonormal rotations.
void validate(const Trajectory& trajectory);

// Chains frame-to-frame relative poses starting from the identity; pose k is
// the product of the first k relatives. timestamps must hold relatives.size()+1
// entries (one per absolute pose).
Trajectory compose_trajectory(const std::vector<PoseSE3>& relatives,
                              const std::vector<std::int64_t>& timestamps_ns);

}  // namespace aebench
