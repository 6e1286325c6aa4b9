#include "aebench/ae_metrics.hpp"

#include <algorithm>
#include <cmath>

namespace aebench {

double mean_brightness(const RawImage& img) {
  const std::int64_t n = static_cast<std::int64_t>(img.data.size());
  if (n == 0) return 0.0;
  std::int64_t sum = 0;
#pragma omp parallel for schedule(static) reduction(+ : sum)
  for (std::int64_t i = 0; i < n; ++i) sum += img.data[i];
  return static_cast<double>(sum) / static_cast<double>(n) / kDnMax;
}

std::vector<float> gradient_magnitudes(const std::vector<float>& normalized, int width,
                                       int height) {
  std::vector<float> mags(normalized.size());
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    const int ym = std::max(y - 1, 0);
    const int yp = std::min(y + 1, height - 1);
    for (int x = 0; x < width; ++x) {
      const int xm = std::max(x - 1, 0);
      const int xp = std::min(x + 1, width - 1);
      const float gx = 0.5f * (normalized[static_cast<std::size_t>(y) * width + xp] -
                               normalized[static_cast<std::size_t>(y) * width + xm]);
      const float gy = 0.5f * (normalized[static_cast<std::size_t>(yp) * width + x] -
                               normalized[static_cast<std::size_t>(ym) * width + x]);
      mags[static_cast<std::size_t>(y) * width + x] = std::sqrt(gx * gx + gy * gy);
    }
  }
  return mags;
}

std::vector<float> gradient_magnitudes(const RawImage& img) {
  std::vector<float> normalized(img.data.size());
  const std::int64_t n = static_cast<std::int64_t>(img.data.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    normalized[i] = static_cast<float>(img.data[i]) / static_cast<float>(kDnMax);
  return gradient_magnitudes(normalized, img.width, img.height);
}

double shim_shaped_mean(const std::vector<float>& magnitudes, double delta, double lambda) {
  if (magnitudes.empty()) return 0.0;
  const double log_norm = std::log(lambda + 1.0);
  // Fixed-order chunk partials keep the sum independent of the thread count.
  const std::int64_t n = static_cast<std::int64_t>(magnitudes.size());
  const std::int64_t chunk = 4096;
  const std::int64_t chunks = (n + chunk - 1) / chunk;
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < chunks; ++c) {
    double acc = 0.0;
    const std::int64_t end = std::min(n, (c + 1) * chunk);
    for (std::int64_t i = c * chunk; i < end; ++i) {
      const double g = magnitudes[i];
      if (g >= delta) acc += std::log(lambda * (g - delta) + 1.0) / log_norm;
    }
    partial[c] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total / static_cast<double>(n);
}

double shim_gradient_metric(const RawImage& img, double delta, double lambda) {
  if (!(delta >= 0.0 && delta < 1.0)) throw DomainError("shim delta must lie in [0, 1)");
  if (!(lambda > 0.0)) throw DomainError("shim lambda must be positive");
  return shim_shaped_mean(gradient_magnitudes(img), delta, lambda);
}

double zhang_weighted_mean(std::vector<float> magnitudes, double percentile_knee,
                           double softness) {
  if (magnitudes.empty()) return 0.0;
  std::sort(magnitudes.begin(), magnitudes.end());
  const double n = static_cast<double>(magnitudes.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    const double rank = (static_cast<double>(i) + 0.5) / n;
    const double w = 1.0 / (1.0 + std::exp(-softness * (rank - percentile_knee)));
    acc += w * magnitudes[i];
  }
  return acc / n;
}

double zhang_metric(const RawImage& img, double percentile_knee, double softness) {
  if (!(percentile_knee > 0.0 && percentile_knee < 1.0))
    throw DomainError("percentile knee must lie in (0, 1)");
  return zhang_weighted_mean(gradient_magnitudes(img), percentile_knee, softness);
}

std::array<std::int64_t, 256> histogram256(const RawImage& img) {
  std::array<std::int64_t, 256> hist{};
  for (std::uint16_t dn : img.data) ++hist[dn >> 4];
  return hist;
}

double normalized_entropy(const std::array<std::int64_t, 256>& hist) {
  std::int64_t total = 0;
  for (std::int64_t c : hist) total += c;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (std::int64_t c : hist) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log(p);
  }
  return h / std::log(256.0);
}

double kim_metric(const RawImage& img, double alpha_mix) {
  if (!(alpha_mix >= 0.0 && alpha_mix <= 1.0))
    throw DomainError("alpha_mix must lie in [0, 1]");
  const double grad_term = shim_gradient_metric(img, 0.0, 1000.0);
  const double entropy_term = normalized_entropy(histogram256(img));
  return alpha_mix * grad_term + (1.0 - alpha_mix) * entropy_term;
}

}  // namespace aebench
