#include "aebench/features.hpp"

#include <algorithm>
#include <cmath>

namespace aebench {

namespace {

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace

std::vector<float> corner_response_map(const RawImage& img) {
  const int w = img.width;
  const int h = img.height;
  std::vector<float> norm(img.data.size());
  const std::int64_t n = static_cast<std::int64_t>(img.data.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    norm[i] = static_cast<float>(img.data[i]) / static_cast<float>(kDnMax);

  std::vector<float> gx(norm.size()), gy(norm.size());
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    const int ym = clampi(y - 1, 0, h - 1);
    const int yp = clampi(y + 1, 0, h - 1);
    for (int x = 0; x < w; ++x) {
      const int xm = clampi(x - 1, 0, w - 1);
      const int xp = clampi(x + 1, 0, w - 1);
      auto at = [&](int px, int py) { return norm[static_cast<std::size_t>(py) * w + px]; };
      gx[static_cast<std::size_t>(y) * w + x] =
          (at(xp, ym) + 2.0f * at(xp, y) + at(xp, yp)) -
          (at(xm, ym) + 2.0f * at(xm, y) + at(xm, yp));
      gy[static_cast<std::size_t>(y) * w + x] =
          (at(xm, yp) + 2.0f * at(x, yp) + at(xp, yp)) -
          (at(xm, ym) + 2.0f * at(x, ym) + at(xp, ym));
    }
  }

  // 3x3 Gaussian-windowed structure tensor, then its minimum eigenvalue.
  std::vector<float> response(norm.size());
  static constexpr float kGauss[3] = {0.25f, 0.5f, 0.25f};
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double sxx = 0.0, syy = 0.0, sxy = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        const int yy = clampi(y + dy, 0, h - 1);
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = clampi(x + dx, 0, w - 1);
          const double wgt = kGauss[dy + 1] * kGauss[dx + 1];
          const double vx = gx[static_cast<std::size_t>(yy) * w + xx];
          const double vy = gy[static_cast<std::size_t>(yy) * w + xx];
          sxx += wgt * vx * vx;
          syy += wgt * vy * vy;
          sxy += wgt * vx * vy;
        }
      }
      const double trace = sxx + syy;
      const double disc = std::sqrt(std::max((sxx - syy) * (sxx - syy) + 4.0 * sxy * sxy, 0.0));
      response[static_cast<std::size_t>(y) * w + x] = static_cast<float>(0.5 * (trace - disc));
    }
  }
  return response;
}

std::vector<Keypoint> detect_keypoints(const RawImage& img, int max_count) {
  if (img.width < 32 || img.height < 32)
    throw DomainError("keypoint detection needs at least a 32x32 image");
  if (max_count <= 0) return {};

  const int w = img.width;
  const int h = img.height;
  const std::vector<float> response = corner_response_map(img);
  constexpr int kNmsRadius = 5;
  constexpr float kMinResponse = 1e-12f;

  // Non-maximum suppression; plateau ties survive only at the first raster
  // position so the result is unique.
  std::vector<std::vector<Keypoint>> per_row(h);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float r = response[static_cast<std::size_t>(y) * w + x];
      if (r <= kMinResponse) continue;
      bool is_max = true;
      for (int dy = -kNmsRadius; dy <= kNmsRadius && is_max; ++dy) {
        const int yy = y + dy;
        if (yy < 0 || yy >= h) continue;
        for (int dx = -kNmsRadius; dx <= kNmsRadius; ++dx) {
          const int xx = x + dx;
          if (xx < 0 || xx >= w || (dx == 0 && dy == 0)) continue;
          const float q = response[static_cast<std::size_t>(yy) * w + xx];
          if (q > r || (q == r && (yy < y || (yy == y && xx < x)))) {
            is_max = false;
            break;
          }
        }
      }
      if (!is_max) continue;

      Keypoint kp;
      kp.x = x;
      kp.y = y;
      kp.score = r;
      if (x > 0 && x < w - 1) {
        const double left = response[static_cast<std::size_t>(y) * w + x - 1];
        const double right = response[static_cast<std::size_t>(y) * w + x + 1];
        const double denom = left - 2.0 * r + right;
        if (denom < 0.0) kp.x += std::clamp(0.5 * (left - right) / denom, -0.5, 0.5);
      }
      if (y > 0 && y < h - 1) {
        const double up = response[static_cast<std::size_t>(y - 1) * w + x];
        const double down = response[static_cast<std::size_t>(y + 1) * w + x];
        const double denom = up - 2.0 * r + down;
        if (denom < 0.0) kp.y += std::clamp(0.5 * (up - down) / denom, -0.5, 0.5);
      }
      per_row[y].push_back(kp);
    }
  }

  std::vector<Keypoint> keypoints;
  for (const auto& row : per_row) keypoints.insert(keypoints.end(), row.begin(), row.end());
  std::sort(keypoints.begin(), keypoints.end(), [](const Keypoint& a, const Keypoint& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
  if (static_cast<int>(keypoints.size()) > max_count) keypoints.resize(max_count);
  return keypoints;
}

double grid_uniformity(const std::vector<Keypoint>& keypoints, int width, int height) {
  constexpr int kGrid = 20;
  bool occupied[kGrid * kGrid] = {};
  for (const Keypoint& kp : keypoints) {
    const int cx = clampi(static_cast<int>(kp.x * kGrid / width), 0, kGrid - 1);
    const int cy = clampi(static_cast<int>(kp.y * kGrid / height), 0, kGrid - 1);
    occupied[cy * kGrid + cx] = true;
  }
  int count = 0;
  for (bool cell : occupied) count += cell;
  return 100.0 * count / (kGrid * kGrid);
}

namespace {

struct Patch {
  std::vector<float> values;  // zero-mean, unit-norm; empty when flat
  int xi = 0;
  int yi = 0;
};

std::vector<Patch> extract_patches(const RawImage& img, const std::vector<Keypoint>& kps,
                                   int radius) {
  const int side = 2 * radius + 1;
  std::vector<Patch> patches(kps.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(kps.size()); ++i) {
    Patch& p = patches[i];
    p.xi = static_cast<int>(std::lround(kps[i].x));
    p.yi = static_cast<int>(std::lround(kps[i].y));
    if (p.xi < radius || p.xi >= img.width - radius || p.yi < radius ||
        p.yi >= img.height - radius)
      continue;  // border-excluded: values stays empty
    std::vector<float> raw(static_cast<std::size_t>(side) * side);
    double mean = 0.0;
    for (int dy = -radius; dy <= radius; ++dy)
      for (int dx = -radius; dx <= radius; ++dx) {
        const float v = img.at(p.xi + dx, p.yi + dy);
        raw[static_cast<std::size_t>(dy + radius) * side + (dx + radius)] = v;
        mean += v;
      }
    mean /= raw.size();
    double norm_sq = 0.0;
    for (float& v : raw) {
      v -= static_cast<float>(mean);
      norm_sq += static_cast<double>(v) * v;
    }
    if (norm_sq <= 1e-9) continue;  // flat patch carries no signal
    const float inv = static_cast<float>(1.0 / std::sqrt(norm_sq));
    for (float& v : raw) v *= inv;
    p.values = std::move(raw);
  }
  return patches;
}

// Best and second-best correlation against candidate patches, honoring the
// radius gate. Returns the best index or -1.
int best_candidate(const Patch& query, const std::vector<Patch>& candidates,
                   double search_radius, double& best, double& second) {
  best = -2.0;
  second = -2.0;
  int best_idx = -1;
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const Patch& c = candidates[j];
    if (c.values.empty()) continue;
    if (search_radius > 0.0) {
      const double dx = c.xi - query.xi;
      const double dy = c.yi - query.yi;
      if (dx * dx + dy * dy > search_radius * search_radius) continue;
    }
    double corr = 0.0;
    for (std::size_t k = 0; k < query.values.size(); ++k)
      corr += static_cast<double>(query.values[k]) * c.values[k];
    if (corr > best) {
      second = best;
      best = corr;
      best_idx = static_cast<int>(j);
    } else if (corr > second) {
      second = corr;
    }
  }
  return best_idx;
}

}  // namespace

MatchSet match_features(const RawImage& img_a, const std::vector<Keypoint>& kps_a,
                        const RawImage& img_b, const std::vector<Keypoint>& kps_b,
                        const MatchParams& params) {
  MatchSet out;
  if (kps_a.empty() || kps_b.empty()) return out;
  const std::vector<Patch> pa = extract_patches(img_a, kps_a, params.patch_radius);
  const std::vector<Patch> pb = extract_patches(img_b, kps_b, params.patch_radius);

  std::vector<int> forward(pa.size(), -1);
  std::vector<double> forward_corr(pa.size(), -2.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(pa.size()); ++i) {
    if (pa[i].values.empty()) continue;
    double best = 0.0, second = 0.0;
    const int j = best_candidate(pa[i], pb, params.search_radius_px, best, second);
    if (j < 0 || best < params.min_correlation) continue;
    if (second > params.ratio * best) continue;
    forward[i] = j;
    forward_corr[i] = best;
  }

  std::vector<int> backward(pb.size(), -1);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(pb.size()); ++j) {
    if (pb[j].values.empty()) continue;
    double best = 0.0, second = 0.0;
    backward[j] = best_candidate(pb[j], pa, params.search_radius_px, best, second);
  }

  for (std::size_t i = 0; i < pa.size(); ++i) {
    const int j = forward[i];
    if (j >= 0 && backward[j] == static_cast<int>(i))
      out.pairs.push_back({static_cast<int>(i), j, forward_corr[i]});
  }
  return out;
}

bool sequence_success(const std::vector<int>& match_counts, int tau) {
  if (match_counts.empty()) throw DomainError("sequence success needs at least one count");
  return *std::min_element(match_counts.begin(), match_counts.end()) >= tau;
}

SuccessCurve success_curve(const std::vector<std::vector<int>>& per_trajectory_counts,
                           const std::vector<int>& taus) {
  if (per_trajectory_counts.empty()) throw DomainError("success curve needs trajectories");
  SuccessCurve curve;
  curve.thresholds = taus;
  curve.success_rate.reserve(taus.size());
  for (int tau : taus) {
    int ok = 0;
    for (const auto& counts : per_trajectory_counts) ok += sequence_success(counts, tau);
    curve.success_rate.push_back(static_cast<double>(ok) /
                                 static_cast<double>(per_trajectory_counts.size()));
  }
  return curve;
}

}  // namespace aebench
