#pragma once

#include <vector>

#include "aebench/image.hpp"

namespace aebench {

struct Keypoint {
  double x = 0.0;  // subpixel column
  double y = 0.0;  // subpixel row
  double score = 0.0;
};

// Minimum eigenvalue of the gradient structure tensor (Sobel gradients,
// 3x3 Gaussian window) per pixel.
std::vector<float> corner_response_map(const RawImage& img);

// Corner detection: response map, non-maximum suppression with radius 5,
// parabolic subpixel refinement, top max_count by score with deterministic
// (score desc, y, x) ordering. Requires at least a 32x32 image.
std::vector<Keypoint> detect_keypoints(const RawImage& img, int max_count);

// Fraction of occupied cells in a 20x20 grid, in percent.
double grid_uniformity(const std::vector<Keypoint>& keypoints, int width, int height);

struct Match {
  int index_a = 0;
  int index_b = 0;
  double correlation = 0.0;
};

struct MatchSet {
  std::vector<Match> pairs;
  int count() const { return static_cast<int>(pairs.size()); }
};

struct MatchParams {
  int patch_radius = 5;            // 11x11 patches
  double min_correlation = 0.8;
  double ratio = 0.9;              // second best must stay below ratio * best
  double search_radius_px = 0.0;   // 0 disables the radius gate
};

// Zero-mean normalized patch correlation with mutual-best pairing and a
// best/second-best ratio test. Keypoints within patch_radius of the border
// are excluded. The result is one-to-one by construction.
MatchSet match_features(const RawImage& img_a, const std::vector<Keypoint>& kps_a,
                        const RawImage& img_b, const std::vector<Keypoint>& kps_b,
                        const MatchParams& params = {});

// True iff every consecutive-pair match count reaches tau.
bool sequence_success(const std::vector<int>& match_counts, int tau);

struct SuccessCurve {
  std::vector<int> thresholds;
  std::vector<double> success_rate;  // fraction of trajectories succeeding per tau
};

SuccessCurve success_curve(const std::vector<std::vector<int>>& per_trajectory_counts,
                           const std::vector<int>& taus);

}  // namespace aebench
