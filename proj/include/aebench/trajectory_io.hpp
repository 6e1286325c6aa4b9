#pragma once

#include <filesystem>

#include "aebench/se3.hpp"

namespace aebench {

// Text trajectory format, one pose per line:
//   timestamp_s tx ty tz qx qy qz qw
// (quaternion w-last), the layout used by common trajectory evaluation tools,
// so externally produced reference files load directly.
Trajectory load_trajectory_tum(const std::filesystem::path& path);
void save_trajectory_tum(const std::filesystem::path& path, const Trajectory& trajectory);

}  // namespace aebench
