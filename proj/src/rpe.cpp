#include "aebench/rpe.hpp"

#include <cmath>
#include <numbers>

#include "aebench/stats.hpp"

namespace aebench {

RPEReport relative_pose_error(const Trajectory& est, const Trajectory& ref,
                              const std::vector<double>& segment_lengths_m,
                              double length_tolerance, std::int64_t max_gap_ns) {
  validate(est);
  validate(ref);

  // Associate by nearest reference timestamp; both inputs are time-sorted.
  std::vector<const PoseSE3*> p;  // estimate
  std::vector<const PoseSE3*> q;  // reference
  std::size_t cursor = 0;
  for (const PoseSE3& pose : est.poses) {
    while (cursor + 1 < ref.poses.size() &&
           std::abs(ref.poses[cursor + 1].timestamp_ns - pose.timestamp_ns) <=
               std::abs(ref.poses[cursor].timestamp_ns - pose.timestamp_ns))
      ++cursor;
    if (std::abs(ref.poses[cursor].timestamp_ns - pose.timestamp_ns) > max_gap_ns) continue;
    p.push_back(&pose);
    q.push_back(&ref.poses[cursor]);
  }
  const int n = static_cast<int>(p.size());

  RPEReport report;
  if (n < 2) {
    report.skipped_lengths_m = segment_lengths_m;
    return report;
  }

  std::vector<double> arc(n, 0.0);
  for (int i = 1; i < n; ++i)
    arc[i] = arc[i - 1] + (q[i]->translation - q[i - 1]->translation).norm();

  for (double length : segment_lengths_m) {
    std::vector<double> trans_errors;
    std::vector<double> rot_errors;
    for (int i = 0; i < n; ++i) {
      // End index whose accumulated arc length is closest to the target.
      int best_j = -1;
      double best_diff = length_tolerance * length;
      for (int j = i + 1; j < n; ++j) {
        const double diff = std::abs(arc[j] - arc[i] - length);
        if (diff <= best_diff) {
          best_diff = diff;
          best_j = j;
        }
        if (arc[j] - arc[i] > length * (1.0 + length_tolerance)) break;
      }
      if (best_j < 0) continue;

      const PoseSE3 ref_rel = q[i]->inverse() * *q[best_j];
      const PoseSE3 est_rel = p[i]->inverse() * *p[best_j];
      const PoseSE3 error = ref_rel.inverse() * est_rel;
      trans_errors.push_back(error.translation.norm() / length * 100.0);
      rot_errors.push_back(rotation_angle_rad(error.rotation) * 180.0 / std::numbers::pi /
                           length);
    }
    if (trans_errors.empty()) {
      report.skipped_lengths_m.push_back(length);
      continue;
    }
    RPEEntry entry;
    entry.segment_length_m = length;
    entry.median_translation_pct = median(trans_errors);
    entry.median_rotation_deg_per_m = median(rot_errors);
    entry.pair_count = static_cast<int>(trans_errors.size());
    report.entries.push_back(entry);
  }
  return report;
}

}  // namespace aebench
