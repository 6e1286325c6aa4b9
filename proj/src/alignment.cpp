#include "aebench/alignment.hpp"

#include <cmath>
#include <vector>

namespace aebench {

namespace {

// Index of the ref pose whose timestamp is nearest to t, or -1 when the gap
// exceeds max_gap.
int nearest_by_time(const Trajectory& ref, std::int64_t t, std::int64_t max_gap) {
  int best = -1;
  std::int64_t best_gap = max_gap + 1;
  for (std::size_t i = 0; i < ref.poses.size(); ++i) {
    const std::int64_t gap = std::abs(ref.poses[i].timestamp_ns - t);
    if (gap < best_gap) {
      best_gap = gap;
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace

AlignmentResult align_similarity(const Trajectory& est, const Trajectory& ref,
                                 std::int64_t max_gap_ns) {
  validate(est);
  validate(ref);

  std::vector<Eigen::Vector3d> x;  // reference positions
  std::vector<Eigen::Vector3d> y;  // estimate positions
  for (const PoseSE3& pose : est.poses) {
    const int j = nearest_by_time(ref, pose.timestamp_ns, max_gap_ns);
    if (j < 0) continue;
    x.push_back(ref.poses[j].translation);
    y.push_back(pose.translation);
  }
  const int n = static_cast<int>(x.size());
  if (n < 3) throw GeometryError("alignment needs at least 3 associated poses, got " +
                                 std::to_string(n));

  Eigen::Vector3d mu_x = Eigen::Vector3d::Zero();
  Eigen::Vector3d mu_y = Eigen::Vector3d::Zero();
  for (int i = 0; i < n; ++i) {
    mu_x += x[i];
    mu_y += y[i];
  }
  mu_x /= n;
  mu_y /= n;

  Eigen::Matrix3d sigma = Eigen::Matrix3d::Zero();
  double var_x = 0.0;
  for (int i = 0; i < n; ++i) {
    sigma += (y[i] - mu_y) * (x[i] - mu_x).transpose();
    var_x += (x[i] - mu_x).squaredNorm();
  }
  sigma /= n;
  var_x /= n;
  if (var_x < 1e-18) throw GeometryError("alignment is rank-deficient: reference path is a point");

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(sigma, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d d = svd.singularValues();
  if (d(1) <= 1e-12 * std::max(d(0), 1e-300))
    throw GeometryError("alignment is rank-deficient: positions are collinear");

  Eigen::Vector3d s_diag = Eigen::Vector3d::Ones();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) s_diag(2) = -1.0;

  SimilarityTransform t;
  t.rotation = svd.matrixU() * s_diag.asDiagonal() * svd.matrixV().transpose();
  t.scale = d.dot(s_diag) / var_x;
  if (!(t.scale > 0.0)) throw GeometryError("alignment produced a non-positive scale");
  t.translation = mu_y - t.scale * t.rotation * mu_x;

  AlignmentResult out;
  out.transform = t;
  out.association_count = n;
  out.aligned_estimate = est;
  const Eigen::Matrix3d r_inv = t.rotation.transpose();
  const Eigen::Quaterniond q_inv(r_inv);
  for (PoseSE3& pose : out.aligned_estimate.poses) {
    pose.translation = r_inv * (pose.translation - t.translation) / t.scale;
    pose.rotation = (q_inv * pose.rotation).normalized();
  }
  return out;
}

}  // namespace aebench
