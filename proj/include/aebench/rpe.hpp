#pragma once

#include <cstdint>
#include <vector>

#include "aebench/se3.hpp"

namespace aebench {

struct RPEEntry {
  double segment_length_m = 0.0;
  double median_translation_pct = 0.0;   // % of segment length
  double median_rotation_deg_per_m = 0.0;
  int pair_count = 0;
};

struct RPEReport {
  std::vector<RPEEntry> entries;          // only lengths with pair_count >= 1
  std::vector<double> skipped_lengths_m;  // requested lengths no pair reached
};

// Relative pose error over fixed reference path lengths. For each start pose
// the end pose is the one whose accumulated reference arc length is closest
// to the segment length (within length_tolerance, fractional). The error
// pose is (Q_i^-1 Q_j)^-1 (P_i^-1 P_j) with Q the reference and P the
// estimate; translation error is reported in % of the segment length and
// rotation in degrees per meter. Trajectories are associated by nearest
// timestamp within max_gap_ns and are expected to be pre-aligned.
RPEReport relative_pose_error(const Trajectory& est, const Trajectory& ref,
                              const std::vector<double>& segment_lengths_m,
                              double length_tolerance = 0.2,
                              std::int64_t max_gap_ns = 50'000'000);

}  // namespace aebench
