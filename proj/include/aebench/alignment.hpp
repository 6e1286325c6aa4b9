#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "aebench/se3.hpp"

namespace aebench {

// Similarity fitted so that est ~= scale * rotation * ref + translation;
// scale therefore reads as "estimate units per reference unit".
struct SimilarityTransform {
  double scale = 1.0;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
};

struct AlignmentResult {
  SimilarityTransform transform;
  Trajectory aligned_estimate;  // inverse transform applied to est, in ref units
  int association_count = 0;
};

// Closed-form least-squares similarity over timestamp-associated positions
// (nearest neighbor within max_gap_ns). Throws GeometryError for fewer than
// 3 associations or collinear/degenerate geometry.
AlignmentResult align_similarity(const Trajectory& est, const Trajectory& ref,
                                 std::int64_t max_gap_ns = 50'000'000);

}  // namespace aebench
