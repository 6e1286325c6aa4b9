#include "aebench/serial_ref.hpp"

#include <algorithm>
#include <cmath>

namespace aebench::serial {

namespace {

// Largest dn whose LUT entry does not exceed x, by hand-rolled bisection.
std::uint16_t lut_search(const std::vector<double>& lut, double x) {
  if (x >= 1.0) return kDnMax;
  if (lut[0] > x) return 0;
  int lo = 0;
  int hi = kLutSize - 1;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (lut[mid] <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return static_cast<std::uint16_t>(lo);
}

double norm_at(const RawImage& img, int x, int y) {
  const int cx = std::clamp(x, 0, img.width - 1);
  const int cy = std::clamp(y, 0, img.height - 1);
  return static_cast<double>(img.at(cx, cy)) / kDnMax;
}

double gradient_magnitude_at(const RawImage& img, int x, int y) {
  const double gx = 0.5 * (norm_at(img, x + 1, y) - norm_at(img, x - 1, y));
  const double gy = 0.5 * (norm_at(img, x, y + 1) - norm_at(img, x, y - 1));
  return std::sqrt(gx * gx + gy * gy);
}

}  // namespace

RawImage emulate(const RawImage& source, double target_exposure_us, const ResponseCurve& crf) {
  if (!(target_exposure_us > 0.0)) throw DomainError("target exposure must be positive");
  const double ratio = target_exposure_us / source.exposure_us;
  const auto& lut = crf.inverse_lut();
  RawImage out = source;
  out.exposure_us = target_exposure_us;
  for (std::size_t i = 0; i < source.data.size(); ++i)
    out.data[i] = lut_search(lut, ratio * lut[source.data[i]]);
  return out;
}

SaturationStats saturation_stats(const RawImage& img) {
  SaturationStats stats;
  for (std::uint16_t dn : img.data) {
    if (dn == 0) ++stats.under_count;
    if (dn == kDnMax) ++stats.over_count;
  }
  if (!img.data.empty())
    stats.fraction = static_cast<double>(stats.under_count + stats.over_count) /
                     static_cast<double>(img.data.size());
  return stats;
}

double rmse_percent(const RawImage& a, const RawImage& b) {
  if (!a.same_size(b)) throw DomainError("rmse requires identical dimensions");
  if (a.data.empty()) return 0.0;
  double acc = 0.0;
  for (int y = 0; y < a.height; ++y)
    for (int x = 0; x < a.width; ++x) {
      const double d = static_cast<double>(a.at(x, y)) - b.at(x, y);
      acc += d * d;
    }
  return std::sqrt(acc / static_cast<double>(a.data.size())) / kDnMax * 100.0;
}

double noise_floor(const std::vector<RawImage>& repeats) {
  if (repeats.size() < 2) throw DomainError("noise floor requires at least 2 repeats");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < repeats.size(); ++i)
    acc += serial::rmse_percent(repeats[i], repeats[i + 1]);
  return acc / static_cast<double>(repeats.size() - 1);
}

double mean_brightness(const RawImage& img) {
  if (img.data.empty()) return 0.0;
  double acc = 0.0;
  for (std::uint16_t dn : img.data) acc += dn;
  return acc / static_cast<double>(img.data.size()) / kDnMax;
}

double shim_gradient_metric(const RawImage& img, double delta, double lambda) {
  const double log_norm = std::log(lambda + 1.0);
  double acc = 0.0;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      const double g = gradient_magnitude_at(img, x, y);
      if (g >= delta) acc += std::log(lambda * (g - delta) + 1.0) / log_norm;
    }
  return acc / static_cast<double>(img.data.size());
}

double zhang_metric(const RawImage& img, double percentile_knee, double softness) {
  std::vector<double> mags;
  mags.reserve(img.data.size());
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) mags.push_back(gradient_magnitude_at(img, x, y));
  std::sort(mags.begin(), mags.end());
  const double n = static_cast<double>(mags.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    const double rank = (static_cast<double>(i) + 0.5) / n;
    acc += mags[i] / (1.0 + std::exp(-softness * (rank - percentile_knee)));
  }
  return acc / n;
}

double kim_metric(const RawImage& img, double alpha_mix) {
  double hist[256] = {};
  for (std::uint16_t dn : img.data) hist[dn / 16] += 1.0;
  double entropy = 0.0;
  for (double c : hist) {
    if (c <= 0.0) continue;
    const double p = c / static_cast<double>(img.data.size());
    entropy -= p * std::log(p);
  }
  entropy /= std::log(256.0);
  return alpha_mix * shim_gradient_metric(img, 0.0, 1000.0) + (1.0 - alpha_mix) * entropy;
}

std::vector<float> corner_response_map(const RawImage& img) {
  const int w = img.width;
  const int h = img.height;
  std::vector<float> response(img.data.size());
  static constexpr double kGauss[3] = {0.25, 0.5, 0.25};
  auto sobel_x = [&](int x, int y) {
    return (norm_at(img, x + 1, y - 1) + 2.0 * norm_at(img, x + 1, y) +
            norm_at(img, x + 1, y + 1)) -
           (norm_at(img, x - 1, y - 1) + 2.0 * norm_at(img, x - 1, y) +
            norm_at(img, x - 1, y + 1));
  };
  auto sobel_y = [&](int x, int y) {
    return (norm_at(img, x - 1, y + 1) + 2.0 * norm_at(img, x, y + 1) +
            norm_at(img, x + 1, y + 1)) -
           (norm_at(img, x - 1, y - 1) + 2.0 * norm_at(img, x, y - 1) +
            norm_at(img, x + 1, y - 1));
  };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double sxx = 0.0, syy = 0.0, sxy = 0.0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = std::clamp(x + dx, 0, w - 1);
          const int yy = std::clamp(y + dy, 0, h - 1);
          const double wgt = kGauss[dy + 1] * kGauss[dx + 1];
          const double gx = sobel_x(xx, yy);
          const double gy = sobel_y(xx, yy);
          sxx += wgt * gx * gx;
          syy += wgt * gy * gy;
          sxy += wgt * gx * gy;
        }
      const double disc = std::sqrt(std::max((sxx - syy) * (sxx - syy) + 4.0 * sxy * sxy, 0.0));
      response[static_cast<std::size_t>(y) * w + x] =
          static_cast<float>(0.5 * (sxx + syy - disc));
    }
  return response;
}

PoseSE3 chain_product(const std::vector<PoseSE3>& relatives) {
  Eigen::Matrix4d acc = Eigen::Matrix4d::Identity();
  for (const PoseSE3& rel : relatives) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.topLeftCorner<3, 3>() = rel.rotation_matrix();
    m.topRightCorner<3, 1>() = rel.translation;
    acc = acc * m;
  }
  PoseSE3 out;
  out.rotation = Eigen::Quaterniond(Eigen::Matrix3d(acc.topLeftCorner<3, 3>())).normalized();
  out.translation = acc.topRightCorner<3, 1>();
  return out;
}

}  // namespace aebench::serial
