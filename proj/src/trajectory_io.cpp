#include "aebench/trajectory_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "aebench/fs_util.hpp"

namespace aebench {

Trajectory load_trajectory_tum(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  Trajectory out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    double ts = 0, tx = 0, ty = 0, tz = 0, qx = 0, qy = 0, qz = 0, qw = 0;
    if (!(row >> ts >> tx >> ty >> tz >> qx >> qy >> qz >> qw))
      throw IoError("malformed trajectory line " + std::to_string(line_no) + " in " +
                    path.string());
    PoseSE3 pose;
    pose.timestamp_ns = static_cast<std::int64_t>(std::llround(ts * 1e9));
    pose.translation = Eigen::Vector3d(tx, ty, tz);
    pose.rotation = Eigen::Quaterniond(qw, qx, qy, qz);
    if (std::abs(pose.rotation.norm() - 1.0) > 1e-6)
      throw IoError("non-unit quaternion at line " + std::to_string(line_no) + " in " +
                    path.string());
    pose.rotation.normalize();
    out.poses.push_back(pose);
  }
  try {
    validate(out);
  } catch (const DomainError& e) {
    throw IoError("invalid trajectory in " + path.string() + ": " + e.what());
  }
  return out;
}

void save_trajectory_tum(const std::filesystem::path& path, const Trajectory& trajectory) {
  std::string out;
  char ts[32];
  for (const PoseSE3& pose : trajectory.poses) {
    std::snprintf(ts, sizeof(ts), "%.9f", static_cast<double>(pose.timestamp_ns) / 1e9);
    out += ts;
    out += ' ';
    out += format_double(pose.translation.x());
    out += ' ';
    out += format_double(pose.translation.y());
    out += ' ';
    out += format_double(pose.translation.z());
    out += ' ';
    out += format_double(pose.rotation.x());
    out += ' ';
    out += format_double(pose.rotation.y());
    out += ' ';
    out += format_double(pose.rotation.z());
    out += ' ';
    out += format_double(pose.rotation.w());
    out += '\n';
  }
  atomic_write(path, out);
}

}  // namespace aebench
