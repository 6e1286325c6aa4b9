#include "aebench/two_view.hpp"

#include <array>
#include <cmath>
#include <numeric>

#include "aebench/rng.hpp"

namespace aebench {

namespace {

struct Normalization {
  Eigen::Matrix3d transform;
  std::vector<Eigen::Vector2d> points;
};

// Hartley conditioning: zero centroid, mean distance sqrt(2).
Normalization normalize_points(const std::vector<Eigen::Vector2d>& pts,
                               const std::vector<int>& indices) {
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  for (int i : indices) centroid += pts[i];
  centroid /= static_cast<double>(indices.size());
  double mean_dist = 0.0;
  for (int i : indices) mean_dist += (pts[i] - centroid).norm();
  mean_dist /= static_cast<double>(indices.size());
  const double scale = mean_dist > 1e-15 ? std::sqrt(2.0) / mean_dist : 1.0;

  Normalization out;
  out.transform << scale, 0, -scale * centroid.x(), 0, scale, -scale * centroid.y(), 0, 0, 1;
  out.points.reserve(indices.size());
  for (int i : indices) out.points.push_back((pts[i] - centroid) * scale);
  return out;
}

// Null-space fit of x_b^T E x_a = 0 over the given correspondences, followed
// by projection to the essential manifold (two equal singular values).
Eigen::Matrix3d fit_essential(const std::vector<Eigen::Vector2d>& pts_a,
                              const std::vector<Eigen::Vector2d>& pts_b,
                              const std::vector<int>& indices) {
  const Normalization na = normalize_points(pts_a, indices);
  const Normalization nb = normalize_points(pts_b, indices);

  Eigen::MatrixXd a(static_cast<Eigen::Index>(indices.size()), 9);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const Eigen::Vector2d& p = na.points[r];
    const Eigen::Vector2d& q = nb.points[r];
    a.row(r) << q.x() * p.x(), q.x() * p.y(), q.x(), q.y() * p.x(), q.y() * p.y(), q.y(), p.x(),
        p.y(), 1.0;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd e = svd.matrixV().col(8);
  Eigen::Matrix3d em;
  em << e(0), e(1), e(2), e(3), e(4), e(5), e(6), e(7), e(8);
  em = nb.transform.transpose() * em * na.transform;

  Eigen::JacobiSVD<Eigen::Matrix3d> esvd(em, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d s = esvd.singularValues();
  const double sigma = 0.5 * (s(0) + s(1));
  return esvd.matrixU() * Eigen::Vector3d(sigma, sigma, 0.0).asDiagonal() *
         esvd.matrixV().transpose();
}

double sampson_error_sq(const Eigen::Matrix3d& f, const Eigen::Vector2d& a,
                        const Eigen::Vector2d& b) {
  const Eigen::Vector3d x1(a.x(), a.y(), 1.0);
  const Eigen::Vector3d x2(b.x(), b.y(), 1.0);
  const Eigen::Vector3d fx1 = f * x1;
  const Eigen::Vector3d ftx2 = f.transpose() * x2;
  const double num = x2.dot(fx1);
  const double den = fx1(0) * fx1(0) + fx1(1) * fx1(1) + ftx2(0) * ftx2(0) + ftx2(1) * ftx2(1);
  if (den < 1e-18) return 1e30;
  return num * num / den;
}

// Linear two-view triangulation in the first camera frame.
Eigen::Vector3d triangulate(const Eigen::Matrix3d& r, const Eigen::Vector3d& t,
                            const Eigen::Vector2d& xa, const Eigen::Vector2d& xb) {
  Eigen::Matrix<double, 3, 4> p1 = Eigen::Matrix<double, 3, 4>::Zero();
  p1.leftCols<3>().setIdentity();
  Eigen::Matrix<double, 3, 4> p2;
  p2.leftCols<3>() = r;
  p2.col(3) = t;

  Eigen::Matrix4d a;
  a.row(0) = xa.x() * p1.row(2) - p1.row(0);
  a.row(1) = xa.y() * p1.row(2) - p1.row(1);
  a.row(2) = xb.x() * p2.row(2) - p2.row(0);
  a.row(3) = xb.y() * p2.row(2) - p2.row(1);
  const Eigen::JacobiSVD<Eigen::Matrix4d> svd(a, Eigen::ComputeFullV);
  const Eigen::Vector4d x = svd.matrixV().col(3);
  if (std::abs(x(3)) < 1e-15) return Eigen::Vector3d(0, 0, -1);
  return x.head<3>() / x(3);
}

}  // namespace

RelativePoseEstimate estimate_relative_pose(const std::vector<Eigen::Vector2d>& points_a,
                                            const std::vector<Eigen::Vector2d>& points_b,
                                            const CameraIntrinsics& intrinsics,
                                            const RansacParams& params) {
  const int n = static_cast<int>(points_a.size());
  if (points_b.size() != points_a.size())
    throw DomainError("correspondence lists must have equal length");
  if (n < 8)
    throw GeometryError("insufficient correspondences: need 8, got " + std::to_string(n));

  // Camera-normalized copies for estimation; pixel copies for Sampson gating.
  std::vector<Eigen::Vector2d> cam_a(n), cam_b(n);
  for (int i = 0; i < n; ++i) {
    cam_a[i] = {(points_a[i].x() - intrinsics.cx) / intrinsics.fx,
                (points_a[i].y() - intrinsics.cy) / intrinsics.fy};
    cam_b[i] = {(points_b[i].x() - intrinsics.cx) / intrinsics.fx,
                (points_b[i].y() - intrinsics.cy) / intrinsics.fy};
  }
  Eigen::Matrix3d k;
  k << intrinsics.fx, 0, intrinsics.cx, 0, intrinsics.fy, intrinsics.cy, 0, 0, 1;
  const Eigen::Matrix3d k_inv = k.inverse();
  const double thr_sq = params.sampson_threshold_px * params.sampson_threshold_px;

  // Explicit draw sequence keeps sampling identical across platforms.
  std::uint64_t rng_state = splitmix64(params.seed);
  auto next_u64 = [&rng_state]() {
    rng_state = splitmix64(rng_state);
    return rng_state;
  };

  std::vector<int> pool(n);
  std::vector<int> best_inliers;
  for (int iter = 0; iter < params.iterations; ++iter) {
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> sample(8);
    for (int k8 = 0; k8 < 8; ++k8) {
      const int pick = k8 + static_cast<int>(next_u64() % static_cast<std::uint64_t>(n - k8));
      std::swap(pool[k8], pool[pick]);
      sample[k8] = pool[k8];
    }

    Eigen::Matrix3d e;
    try {
      e = fit_essential(cam_a, cam_b, sample);
    } catch (...) {
      continue;
    }
    const Eigen::Matrix3d f = k_inv.transpose() * e * k_inv;
    std::vector<int> inliers;
    inliers.reserve(n);
    for (int i = 0; i < n; ++i)
      if (sampson_error_sq(f, points_a[i], points_b[i]) <= thr_sq) inliers.push_back(i);
    if (inliers.size() > best_inliers.size()) best_inliers = std::move(inliers);
  }
  if (best_inliers.size() < 8) throw GeometryError("degenerate geometry: too few inliers");

  const Eigen::Matrix3d essential = fit_essential(cam_a, cam_b, best_inliers);

  // Four-way decomposition; keep the candidate with the most points in front
  // of both cameras.
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(essential, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d u = svd.matrixU();
  Eigen::Matrix3d v = svd.matrixV();
  if (u.determinant() < 0) u.col(2) *= -1.0;
  if (v.determinant() < 0) v.col(2) *= -1.0;
  Eigen::Matrix3d w;
  w << 0, -1, 0, 1, 0, 0, 0, 0, 1;

  const std::array<Eigen::Matrix3d, 2> rotations = {u * w * v.transpose(),
                                                    u * w.transpose() * v.transpose()};
  const std::array<Eigen::Vector3d, 2> translations = {u.col(2), -u.col(2)};

  int best_votes = -1;
  Eigen::Matrix3d best_r = Eigen::Matrix3d::Identity();
  Eigen::Vector3d best_t = Eigen::Vector3d::UnitX();
  for (const Eigen::Matrix3d& r : rotations) {
    for (const Eigen::Vector3d& t : translations) {
      int votes = 0;
      for (int i : best_inliers) {
        const Eigen::Vector3d x = triangulate(r, t, cam_a[i], cam_b[i]);
        if (x.z() > 0.0 && (r * x + t).z() > 0.0) ++votes;
      }
      if (votes > best_votes) {
        best_votes = votes;
        best_r = r;
        best_t = t;
      }
    }
  }
  if (best_votes <= 0) throw GeometryError("no decomposition passes the cheirality check");

  RelativePoseEstimate out;
  out.essential = essential;
  out.inliers = best_inliers;
  // (best_r, best_t) map first-camera coordinates into the second camera;
  // the returned pose is the second camera expressed in the first.
  const Eigen::Matrix3d r_ab = best_r.transpose();
  Eigen::Vector3d t_ab = -r_ab * best_t;
  t_ab.normalize();
  out.pose.rotation = Eigen::Quaterniond(r_ab).normalized();
  out.pose.translation = t_ab;
  return out;
}

}  // namespace aebench
