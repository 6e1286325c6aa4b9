#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "aebench/alignment.hpp"
#include "aebench/fs_util.hpp"
#include "aebench/rpe.hpp"
#include "aebench/se3.hpp"
#include "aebench/serial_ref.hpp"
#include "aebench/trajectory_io.hpp"
#include "aebench/two_view.hpp"

using namespace aebench;

namespace {

Eigen::Quaterniond random_rotation(std::mt19937& gen, double max_angle_rad) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::Vector3d axis(unit(gen), unit(gen), unit(gen));
  while (axis.norm() < 1e-6) axis = Eigen::Vector3d(unit(gen), unit(gen), unit(gen));
  axis.normalize();
  std::uniform_real_distribution<double> angle(0.0, max_angle_rad);
  return Eigen::Quaterniond(Eigen::AngleAxisd(angle(gen), axis));
}

struct TwoViewProblem {
  std::vector<Eigen::Vector2d> pixels_a;
  std::vector<Eigen::Vector2d> pixels_b;
};

// Projection oracle: known relative pose (pose of camera B in camera A),
// random 3D points in front of both cameras, optional pixel noise.
TwoViewProblem project_two_view(const Eigen::Matrix3d& r_ab, const Eigen::Vector3d& t_ab,
                                const CameraIntrinsics& k, int count, unsigned seed,
                                double noise_px) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> ux(-4.0, 4.0);
  std::uniform_real_distribution<double> uy(-3.0, 3.0);
  std::uniform_real_distribution<double> uz(4.0, 12.0);
  std::normal_distribution<double> noise(0.0, 1.0);

  TwoViewProblem problem;
  while (static_cast<int>(problem.pixels_a.size()) < count) {
    const Eigen::Vector3d x_a(ux(gen), uy(gen), uz(gen));
    const Eigen::Vector3d x_b = r_ab.transpose() * (x_a - t_ab);
    if (x_a.z() < 0.5 || x_b.z() < 0.5) continue;
    Eigen::Vector2d pa(k.fx * x_a.x() / x_a.z() + k.cx, k.fy * x_a.y() / x_a.z() + k.cy);
    Eigen::Vector2d pb(k.fx * x_b.x() / x_b.z() + k.cx, k.fy * x_b.y() / x_b.z() + k.cy);
    if (noise_px > 0.0) {
      pa += noise_px * Eigen::Vector2d(noise(gen), noise(gen));
      pb += noise_px * Eigen::Vector2d(noise(gen), noise(gen));
    }
    problem.pixels_a.push_back(pa);
    problem.pixels_b.push_back(pb);
  }
  return problem;
}

double rotation_error_rad(const Eigen::Quaterniond& estimated, const Eigen::Matrix3d& truth) {
  return rotation_angle_rad(Eigen::Quaterniond(truth.transpose() * estimated.toRotationMatrix()));
}

double direction_error_rad(const Eigen::Vector3d& estimated, const Eigen::Vector3d& truth) {
  const double c = std::clamp(estimated.normalized().dot(truth.normalized()), -1.0, 1.0);
  return std::acos(c);
}

Trajectory straight_line(int poses, double step, double scale = 1.0) {
  Trajectory t;
  for (int i = 0; i < poses; ++i) {
    PoseSE3 p;
    p.translation = Eigen::Vector3d(scale * step * i, 0.0, 0.0);
    p.timestamp_ns = static_cast<std::int64_t>(i) * 100'000'000;
    t.poses.push_back(p);
  }
  return t;
}

}  // namespace

TEST_CASE("pure translation recovers identity rotation and the exact direction") {
  const CameraIntrinsics k;
  const Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  const Eigen::Vector3d t(1.0, 0.0, 0.0);
  const TwoViewProblem problem = project_two_view(r, t, k, 60, 1, 0.0);
  const RelativePoseEstimate est =
      estimate_relative_pose(problem.pixels_a, problem.pixels_b, k);
  CHECK(rotation_error_rad(est.pose.rotation, r) < 1e-6);
  CHECK(direction_error_rad(est.pose.translation, t) < 1e-6);
  CHECK(est.pose.translation.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("yaw plus translation under half-pixel noise") {
  const CameraIntrinsics k;
  std::mt19937 gen(2024);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::Matrix3d r =
        Eigen::AngleAxisd(10.0 * std::numbers::pi / 180.0, Eigen::Vector3d::UnitY())
            .toRotationMatrix();
    const Eigen::Vector3d t = Eigen::Vector3d(0.6, 0.1, 0.25).normalized();
    const TwoViewProblem problem = project_two_view(r, t, k, 200, 10 + trial, 0.5);
    const RelativePoseEstimate est =
        estimate_relative_pose(problem.pixels_a, problem.pixels_b, k);
    CHECK(rotation_error_rad(est.pose.rotation, r) < 0.1 * std::numbers::pi / 180.0);
    CHECK(direction_error_rad(est.pose.translation, t) < 0.5 * std::numbers::pi / 180.0);
  }
}

TEST_CASE("gross outliers are rejected by RANSAC") {
  const CameraIntrinsics k;
  const Eigen::Matrix3d r =
      Eigen::AngleAxisd(5.0 * std::numbers::pi / 180.0, Eigen::Vector3d::UnitZ())
          .toRotationMatrix();
  const Eigen::Vector3d t = Eigen::Vector3d(1.0, 0.3, 0.0).normalized();
  TwoViewProblem problem = project_two_view(r, t, k, 150, 3, 0.3);
  std::mt19937 gen(4);
  std::uniform_real_distribution<double> px(0.0, 640.0), py(0.0, 480.0);
  for (int i = 0; i < 50; ++i) {
    problem.pixels_a.emplace_back(px(gen), py(gen));
    problem.pixels_b.emplace_back(px(gen), py(gen));
  }
  const RelativePoseEstimate est =
      estimate_relative_pose(problem.pixels_a, problem.pixels_b, k);
  CHECK(rotation_error_rad(est.pose.rotation, r) < 0.2 * std::numbers::pi / 180.0);
  CHECK(direction_error_rad(est.pose.translation, t) < 1.0 * std::numbers::pi / 180.0);
  CHECK(est.inliers.size() >= 140);
  CHECK(est.inliers.size() <= 160);
}

TEST_CASE("too few correspondences raise a geometry error") {
  const CameraIntrinsics k;
  const TwoViewProblem problem =
      project_two_view(Eigen::Matrix3d::Identity(), Eigen::Vector3d::UnitX(), k, 7, 5, 0.0);
  CHECK_THROWS_AS(estimate_relative_pose(problem.pixels_a, problem.pixels_b, k),
                  GeometryError);
}

TEST_CASE("estimated essential matrix sits on the essential manifold") {
  const CameraIntrinsics k;
  const Eigen::Matrix3d r =
      Eigen::AngleAxisd(0.1, Eigen::Vector3d(0.3, 1.0, 0.2).normalized()).toRotationMatrix();
  const Eigen::Vector3d t = Eigen::Vector3d(0.4, -0.8, 0.2).normalized();
  const TwoViewProblem problem = project_two_view(r, t, k, 80, 6, 0.2);
  const RelativePoseEstimate est =
      estimate_relative_pose(problem.pixels_a, problem.pixels_b, k);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(est.essential);
  const Eigen::Vector3d s = svd.singularValues();
  CHECK(std::abs(s(0) - s(1)) < 1e-9 * s(0));
  CHECK(s(2) < 1e-9 * s(0));
}

TEST_CASE("ransac sampling is deterministic per seed") {
  const CameraIntrinsics k;
  const TwoViewProblem problem = project_two_view(
      Eigen::Matrix3d::Identity(), Eigen::Vector3d(0.2, 1.0, 0.1).normalized(), k, 90, 8, 0.4);
  const RelativePoseEstimate a =
      estimate_relative_pose(problem.pixels_a, problem.pixels_b, k, {500, 1.5, 7});
  const RelativePoseEstimate b =
      estimate_relative_pose(problem.pixels_a, problem.pixels_b, k, {500, 1.5, 7});
  CHECK(a.pose.translation == b.pose.translation);
  CHECK(a.pose.rotation.coeffs() == b.pose.rotation.coeffs());
  CHECK(a.inliers == b.inliers);
}

TEST_CASE("compose_trajectory closed forms and product oracle") {
  std::vector<PoseSE3> identities(5);
  std::vector<std::int64_t> stamps;
  for (int i = 0; i <= 5; ++i) stamps.push_back(i * 1000);
  const Trajectory constant = compose_trajectory(identities, stamps);
  for (const PoseSE3& p : constant.poses) CHECK(p.translation.norm() == 0.0);

  std::vector<PoseSE3> unit_steps(5);
  for (PoseSE3& p : unit_steps) p.translation = Eigen::Vector3d::UnitX();
  const Trajectory line = compose_trajectory(unit_steps, stamps);
  for (int i = 0; i <= 5; ++i)
    CHECK(line.poses[i].translation.x() == doctest::Approx(i).epsilon(1e-12));

  std::mt19937 gen(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<PoseSE3> chain;
  for (int i = 0; i < 12; ++i) {
    PoseSE3 p;
    p.rotation = random_rotation(gen, 0.8);
    p.translation = Eigen::Vector3d(u(gen), u(gen), u(gen));
    chain.push_back(p);
  }
  std::vector<std::int64_t> chain_stamps;
  for (int i = 0; i <= 12; ++i) chain_stamps.push_back(i * 1000);
  const Trajectory composed = compose_trajectory(chain, chain_stamps);
  const PoseSE3 oracle = serial::chain_product(chain);
  CHECK((composed.poses.back().translation - oracle.translation).norm() < 1e-9);
  CHECK(rotation_angle_rad(composed.poses.back().rotation.conjugate() * oracle.rotation) <
        1e-9);

  // associativity: chunked evaluation gives the same final pose
  PoseSE3 left_chunk = serial::chain_product({chain.begin(), chain.begin() + 6});
  PoseSE3 right_chunk = serial::chain_product({chain.begin() + 6, chain.end()});
  const PoseSE3 chunked = left_chunk * right_chunk;
  CHECK((chunked.translation - oracle.translation).norm() < 1e-9);
}

TEST_CASE("similarity alignment is exact on noise-free models") {
  Trajectory ref;
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 40; ++i) {
    PoseSE3 p;
    p.translation = Eigen::Vector3d(u(gen), u(gen), u(gen));
    p.timestamp_ns = i * 1000000;
    ref.poses.push_back(p);
  }

  SUBCASE("pure scale 2") {
    Trajectory est = ref;
    for (PoseSE3& p : est.poses) p.translation *= 2.0;
    const AlignmentResult result = align_similarity(est, ref);
    CHECK(result.transform.scale == doctest::Approx(2.0).epsilon(1e-9));
    for (std::size_t i = 0; i < ref.poses.size(); ++i)
      CHECK((result.aligned_estimate.poses[i].translation - ref.poses[i].translation).norm() <
            1e-9);
  }

  SUBCASE("rigid 90 degree yaw") {
    const Eigen::Matrix3d rz =
        Eigen::AngleAxisd(std::numbers::pi / 2.0, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    Trajectory est = ref;
    for (PoseSE3& p : est.poses) p.translation = rz * p.translation;
    const AlignmentResult result = align_similarity(est, ref);
    CHECK(result.transform.scale == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((result.transform.rotation - rz).norm() < 1e-9);
    for (std::size_t i = 0; i < ref.poses.size(); ++i)
      CHECK((result.aligned_estimate.poses[i].translation - ref.poses[i].translation).norm() <
            1e-9);
  }
}

TEST_CASE("similarity alignment on noisy data is a least-squares optimum") {
  std::mt19937 gen(23);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::normal_distribution<double> noise(0.0, 0.05);

  Trajectory ref;
  for (int i = 0; i < 400; ++i) {
    PoseSE3 p;
    p.translation = Eigen::Vector3d(u(gen), u(gen), u(gen));
    p.timestamp_ns = i * 1000000;
    ref.poses.push_back(p);
  }
  const double true_scale = 2.0;
  const Eigen::Matrix3d true_rot = random_rotation(gen, 1.0).toRotationMatrix();
  const Eigen::Vector3d true_trans(1.0, -2.0, 0.5);
  Trajectory est = ref;
  for (PoseSE3& p : est.poses)
    p.translation = true_scale * true_rot * p.translation + true_trans +
                    Eigen::Vector3d(noise(gen), noise(gen), noise(gen));

  const AlignmentResult result = align_similarity(est, ref);
  CHECK(result.transform.scale == doctest::Approx(true_scale).epsilon(0.01));

  auto fit_cost = [&](double s, const Eigen::Matrix3d& r, const Eigen::Vector3d& t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < ref.poses.size(); ++i)
      acc += (est.poses[i].translation - s * r * ref.poses[i].translation - t).squaredNorm();
    return acc;
  };
  const double closed_form = fit_cost(result.transform.scale, result.transform.rotation,
                                      result.transform.translation);

  // Local perturbations never improve the closed-form optimum.
  std::normal_distribution<double> perturb(0.0, 0.01);
  for (int trial = 0; trial < 200; ++trial) {
    const double s = result.transform.scale * (1.0 + perturb(gen));
    const Eigen::Matrix3d r = random_rotation(gen, 0.01).toRotationMatrix() *
                              result.transform.rotation;
    const Eigen::Vector3d t = result.transform.translation +
                              Eigen::Vector3d(perturb(gen), perturb(gen), perturb(gen));
    CHECK(fit_cost(s, r, t) >= closed_form - 1e-9);
  }

  // Residual RMS sits at the noise level (3 dof per point).
  const double rms = std::sqrt(closed_form / static_cast<double>(ref.poses.size()));
  CHECK(rms == doctest::Approx(0.05 * std::sqrt(3.0)).epsilon(0.05));
}

TEST_CASE("alignment error cases") {
  Trajectory ref = straight_line(10, 1.0);
  Trajectory two = straight_line(2, 1.0);
  CHECK_THROWS_AS(align_similarity(two, ref), DomainError);  // trajectory too short

  // fewer than 3 associations within the gap
  Trajectory far = straight_line(10, 1.0);
  for (PoseSE3& p : far.poses) p.timestamp_ns += 10'000'000'000LL;
  CHECK_THROWS_AS(align_similarity(far, ref), GeometryError);

  // collinear positions are rank-deficient
  CHECK_THROWS_AS(align_similarity(straight_line(10, 1.0), ref), GeometryError);
}

TEST_CASE("RPE of a trajectory against itself is zero") {
  std::mt19937 gen(41);
  std::uniform_real_distribution<double> u(-0.3, 0.5);
  Trajectory t;
  PoseSE3 cur;
  for (int i = 0; i < 120; ++i) {
    cur.timestamp_ns = i * 100'000'000;
    t.poses.push_back(cur);
    PoseSE3 step;
    step.rotation = random_rotation(gen, 0.05);
    step.translation = Eigen::Vector3d(0.5 + u(gen), u(gen) * 0.2, 0.0);
    cur = cur * step;
  }
  const RPEReport report = relative_pose_error(t, t, {5.0, 10.0, 20.0});
  REQUIRE(!report.entries.empty());
  for (const RPEEntry& e : report.entries) {
    CHECK(e.median_translation_pct == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(e.median_rotation_deg_per_m == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(e.pair_count >= 1);
  }
}

TEST_CASE("RPE ignores a constant global offset") {
  const Trajectory ref = straight_line(100, 1.0);
  Trajectory est = ref;
  for (PoseSE3& p : est.poses) p.translation += Eigen::Vector3d(5.0, -3.0, 2.0);
  const RPEReport report = relative_pose_error(est, ref, {10.0, 20.0});
  for (const RPEEntry& e : report.entries)
    CHECK(e.median_translation_pct == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("RPE is invariant under a common rigid transform") {
  std::mt19937 gen(53);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  Trajectory ref;
  PoseSE3 cur;
  for (int i = 0; i < 80; ++i) {
    cur.timestamp_ns = i * 100'000'000;
    ref.poses.push_back(cur);
    PoseSE3 step;
    step.rotation = random_rotation(gen, 0.04);
    step.translation = Eigen::Vector3d(1.0, u(gen), u(gen));
    cur = cur * step;
  }
  Trajectory est = ref;
  std::normal_distribution<double> n(0.0, 0.05);
  for (PoseSE3& p : est.poses) p.translation += Eigen::Vector3d(n(gen), n(gen), n(gen));

  const RPEReport base = relative_pose_error(est, ref, {10.0, 20.0});

  PoseSE3 rigid;
  rigid.rotation = random_rotation(gen, 2.0);
  rigid.translation = Eigen::Vector3d(4.0, -7.0, 3.0);
  Trajectory est_t = est;
  Trajectory ref_t = ref;
  for (PoseSE3& p : est_t.poses) {
    const std::int64_t ts = p.timestamp_ns;
    p = rigid * p;
    p.timestamp_ns = ts;
  }
  for (PoseSE3& p : ref_t.poses) {
    const std::int64_t ts = p.timestamp_ns;
    p = rigid * p;
    p.timestamp_ns = ts;
  }
  const RPEReport moved = relative_pose_error(est_t, ref_t, {10.0, 20.0});
  REQUIRE(moved.entries.size() == base.entries.size());
  for (std::size_t i = 0; i < base.entries.size(); ++i) {
    CHECK(moved.entries[i].median_translation_pct ==
          doctest::Approx(base.entries[i].median_translation_pct).epsilon(1e-9));
    CHECK(moved.entries[i].median_rotation_deg_per_m ==
          doctest::Approx(base.entries[i].median_rotation_deg_per_m).epsilon(1e-9));
  }
}

TEST_CASE("constructed 1 percent drift scores 1 percent translation error") {
  const Trajectory ref = straight_line(200, 1.0);
  const Trajectory est = straight_line(200, 1.0, 1.01);
  const RPEReport report = relative_pose_error(est, ref, {5.0, 10.0, 20.0, 50.0});
  REQUIRE(report.entries.size() == 4);
  for (const RPEEntry& e : report.entries) {
    CHECK(e.median_translation_pct == doctest::Approx(1.0).epsilon(0.2));
    CHECK(e.median_rotation_deg_per_m == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("segment lengths no pair reaches are skipped") {
  const Trajectory ref = straight_line(10, 1.0);  // 9 m of path
  const RPEReport report = relative_pose_error(ref, ref, {5.0, 50.0});
  REQUIRE(report.entries.size() == 1);
  CHECK(report.entries[0].segment_length_m == 5.0);
  REQUIRE(report.skipped_lengths_m.size() == 1);
  CHECK(report.skipped_lengths_m[0] == 50.0);
}

TEST_CASE("trajectory file round trip and validation") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "aebench_traj_test";
  fs::create_directories(dir);
  const fs::path path = dir / "traj.txt";

  std::mt19937 gen(71);
  Trajectory t;
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 25; ++i) {
    PoseSE3 p;
    p.rotation = random_rotation(gen, 3.0);
    p.translation = Eigen::Vector3d(u(gen), u(gen), u(gen));
    p.timestamp_ns = 45454545LL * (i + 1);
    t.poses.push_back(p);
  }
  save_trajectory_tum(path, t);
  const Trajectory loaded = load_trajectory_tum(path);
  REQUIRE(loaded.poses.size() == t.poses.size());
  for (std::size_t i = 0; i < t.poses.size(); ++i) {
    CHECK(loaded.poses[i].timestamp_ns == t.poses[i].timestamp_ns);
    CHECK((loaded.poses[i].translation - t.poses[i].translation).norm() == 0.0);
    CHECK(rotation_angle_rad(loaded.poses[i].rotation.conjugate() * t.poses[i].rotation) <
          1e-12);
  }

  SUBCASE("malformed line is rejected") {
    atomic_write(path, "1.0 2.0 3.0\n");
    CHECK_THROWS_AS(load_trajectory_tum(path), IoError);
  }
  SUBCASE("non-unit quaternion is rejected") {
    atomic_write(path, "1.0 0 0 0 0 0 0 2.0\n2.0 0 0 0 0 0 0 2.0\n");
    CHECK_THROWS_AS(load_trajectory_tum(path), IoError);
  }
  SUBCASE("non-increasing timestamps are rejected") {
    atomic_write(path, "2.0 0 0 0 0 0 0 1\n1.0 0 0 0 0 0 0 1\n");
    CHECK_THROWS_AS(load_trajectory_tum(path), IoError);
  }
  fs::remove_all(dir);
}
