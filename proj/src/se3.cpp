#include "aebench/se3.hpp"

#include <cmath>
#include <string>

namespace aebench {

double rotation_angle_rad(const Eigen::Quaterniond& q) {
  Eigen::Quaterniond u = q.normalized();
  const double w = std::min(1.0, std::abs(u.w()));
  return 2.0 * std::acos(w);
}

void validate(const Trajectory& trajectory) {
  if (trajectory.poses.size() < 2) throw DomainError("trajectory needs at least 2 poses");
  for (std::size_t i = 0; i < trajectory.poses.size(); ++i) {
    const PoseSE3& pose = trajectory.poses[i];
    if (std::abs(pose.rotation.norm() - 1.0) > 1e-9)
      throw DomainError("pose rotation is not a unit quaternion at index " + std::to_string(i));
    if (i > 0 && !(pose.timestamp_ns > trajectory.poses[i - 1].timestamp_ns))
      throw DomainError("trajectory timestamps must strictly increase");
  }
}

Trajectory compose_trajectory(const std::vector<PoseSE3>& relatives,
                              const std::vector<std::int64_t>& timestamps_ns) {
  if (relatives.empty()) throw DomainError("compose needs at least one relative pose");
  if (timestamps_ns.size() != relatives.size() + 1)
    throw DomainError("compose needs relatives.size()+1 timestamps");
  Trajectory out;
  out.poses.reserve(relatives.size() + 1);
  PoseSE3 current;
  current.timestamp_ns = timestamps_ns.front();
  out.poses.push_back(current);
  for (std::size_t i = 0; i < relatives.size(); ++i) {
    current = current * relatives[i];
    current.timestamp_ns = timestamps_ns[i + 1];
    out.poses.push_back(current);
  }
  return out;
}

}  // namespace aebench
