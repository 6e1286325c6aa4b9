#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "aebench/se3.hpp"

namespace aebench {

struct CameraIntrinsics {
  double fx = 500.0;
  double fy = 500.0;
  double cx = 320.0;
  double cy = 240.0;
};

struct RansacParams {
  int iterations = 500;
  double sampson_threshold_px = 1.5;
  std::uint64_t seed = 42;
};

struct RelativePoseEstimate {
  // Pose of the second camera expressed in the first camera's frame;
  // translation has unit norm (monocular scale is unobservable).
  PoseSE3 pose;
  Eigen::Matrix3d essential = Eigen::Matrix3d::Zero();  // x_b^T E x_a = 0, normalized coords
  std::vector<int> inliers;
};

// Normalized eight-point essential estimation inside seeded RANSAC, with a
// least-squares refit on the final inlier set, projection to the essential
// manifold and cheirality-based selection of the (R, t) decomposition.
// Throws GeometryError for < 8 matches or when no decomposition places the
// inliers in front of both cameras.
RelativePoseEstimate estimate_relative_pose(const std::vector<Eigen::Vector2d>& points_a,
                                            const std::vector<Eigen::Vector2d>& points_b,
                                            const CameraIntrinsics& intrinsics,
                                            const RansacParams& params = {});

}  // namespace aebench
