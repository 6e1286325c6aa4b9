#include "aebench/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "aebench/rng.hpp"

namespace aebench {

std::vector<std::array<double, 2>> make_linear_path(std::array<double, 2> start,
                                                    std::array<double, 2> direction,
                                                    double step_px, int cycles) {
  const double norm = std::hypot(direction[0], direction[1]);
  const double dx = norm > 0 ? direction[0] / norm : 0.0;
  const double dy = norm > 0 ? direction[1] / norm : 0.0;
  std::vector<std::array<double, 2>> path(static_cast<std::size_t>(std::max(cycles, 0)));
  for (int c = 0; c < cycles; ++c)
    path[c] = {start[0] + dx * step_px * c, start[1] + dy * step_px * c};
  return path;
}

namespace {

double lattice_value(std::uint64_t seed, std::int64_t ix, std::int64_t iy) {
  const std::uint64_t h =
      hash_combine(seed, hash_combine(static_cast<std::uint64_t>(ix) * 0x8da6b343ULL,
                                      static_cast<std::uint64_t>(iy) * 0xd8163841ULL));
  return hash_to_unit(h);
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

double value_noise(std::uint64_t seed, double x, double y) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const std::int64_t ix = static_cast<std::int64_t>(fx);
  const std::int64_t iy = static_cast<std::int64_t>(fy);
  const double tx = smoothstep(x - fx);
  const double ty = smoothstep(y - fy);
  const double v00 = lattice_value(seed, ix, iy);
  const double v10 = lattice_value(seed, ix + 1, iy);
  const double v01 = lattice_value(seed, ix, iy + 1);
  const double v11 = lattice_value(seed, ix + 1, iy + 1);
  const double a = v00 + (v10 - v00) * tx;
  const double b = v01 + (v11 - v01) * tx;
  return a + (b - a) * ty;
}

double fbm(std::uint64_t seed, double x, double y, int octaves) {
  double amp = 1.0;
  double freq = 1.0;
  double total = 0.0;
  double norm = 0.0;
  for (int o = 0; o < octaves; ++o) {
    total += amp * value_noise(hash_combine(seed, static_cast<std::uint64_t>(o)), x * freq,
                               y * freq);
    norm += amp;
    amp *= 0.5;
    freq *= 2.0;
  }
  return total / norm;
}

// Monotone [0,1] -> [0,1] shaping that pushes mass toward both ends as the
// mix approaches 1, keeping the endpoints fixed.
double bimodal_shape(double u, double mix) {
  constexpr double kSharpness = 8.0;
  const double lo = 1.0 / (1.0 + std::exp(kSharpness * 0.5));
  const double hi = 1.0 / (1.0 + std::exp(-kSharpness * 0.5));
  const double s = (1.0 / (1.0 + std::exp(-kSharpness * (u - 0.5))) - lo) / (hi - lo);
  return (1.0 - mix) * u + mix * s;
}

}  // namespace

RadianceImage generate_radiance_canvas(const SceneSpec& spec) {
  if (!(spec.dynamic_range > 1.0)) throw DomainError("dynamic range must exceed 1");
  if (spec.width <= 1 || spec.height <= 1) throw DomainError("canvas must be at least 2x2");

  RadianceImage canvas(spec.width, spec.height);
  const double scale = spec.base_frequency / std::max(spec.width, spec.height);
  std::vector<float>& field = canvas.data;

#pragma omp parallel for schedule(static)
  for (int y = 0; y < spec.height; ++y)
    for (int x = 0; x < spec.width; ++x)
      field[static_cast<std::size_t>(y) * spec.width + x] =
          static_cast<float>(fbm(spec.seed, x * scale, y * scale, spec.octaves));

  float lo = field[0];
  float hi = field[0];
#pragma omp parallel for schedule(static) reduction(min : lo) reduction(max : hi)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(field.size()); ++i) {
    lo = std::min(lo, field[i]);
    hi = std::max(hi, field[i]);
  }
  const double span = std::max(static_cast<double>(hi) - lo, 1e-12);

  // Normalize to [0,1] exactly, shape, then map to log-radiance so the
  // realized max/min ratio equals the requested dynamic range.
  const double log_dr = std::log(spec.dynamic_range);
  const double base = spec.mid_radiance / std::sqrt(spec.dynamic_range);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(field.size()); ++i) {
    const double u = (static_cast<double>(field[i]) - lo) / span;
    const double shaped = bimodal_shape(u, spec.bimodality);
    field[i] = static_cast<float>(base * std::exp(shaped * log_dr));
  }
  return canvas;
}

namespace {

double vignette_at(const CaptureSpec& capture, int x, int y) {
  if (capture.vignette_strength <= 0.0) return 1.0;
  const double cx = 0.5 * (capture.frame_width - 1);
  const double cy = 0.5 * (capture.frame_height - 1);
  const double r_corner = std::hypot(cx, cy);
  const double r = std::hypot(x - cx, y - cy) / r_corner;
  const double theta = std::numbers::pi / 4.0 * capture.vignette_strength * r;
  const double c = std::cos(theta);
  return c * c * c * c;
}

double sample_bilinear(const std::vector<float>& field, int width, int height, double x,
                       double y) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const int ix = static_cast<int>(fx);
  const int iy = static_cast<int>(fy);
  const double tx = x - fx;
  const double ty = y - fy;
  const int ix1 = std::min(ix + 1, width - 1);
  const int iy1 = std::min(iy + 1, height - 1);
  auto at = [&](int px, int py) {
    return static_cast<double>(field[static_cast<std::size_t>(py) * width + px]);
  };
  const double a = at(ix, iy) + (at(ix1, iy) - at(ix, iy)) * tx;
  const double b = at(ix, iy1) + (at(ix1, iy1) - at(ix, iy1)) * tx;
  return a + (b - a) * ty;
}

}  // namespace

RawImage render_frame(const RadianceImage& canvas, CropWindow window, double exposure_us,
                      const CaptureSpec& capture, std::uint64_t noise_stream) {
  if (!(exposure_us > 0.0)) throw DomainError("exposure must be positive");
  if (window.x0 < 0.0 || window.y0 < 0.0 ||
      window.x0 + capture.frame_width > canvas.width ||
      window.y0 + capture.frame_height > canvas.height)
    throw DomainError("render window out of canvas bounds");

  RawImage out(capture.frame_width, capture.frame_height, exposure_us);
  const std::uint64_t key = hash_combine(capture.noise_seed, noise_stream);
  const bool noisy = capture.read_noise_sigma_rel > 0.0 || capture.shot_noise_scale > 0.0;

#pragma omp parallel for schedule(static)
  for (int y = 0; y < capture.frame_height; ++y) {
    for (int x = 0; x < capture.frame_width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * capture.frame_width + x;
      const double sx = window.x0 + x;
      const double sy = window.y0 + y;
      double radiance = sample_bilinear(canvas.data, canvas.width, canvas.height, sx, sy);
      if (canvas.has_vignette())
        radiance *= sample_bilinear(canvas.vignette, canvas.width, canvas.height, sx, sy);
      double rel = exposure_us * vignette_at(capture, x, y) * radiance;
      if (noisy) {
        double n = capture.read_noise_sigma_rel * gaussian_hash(key, i * 2);
        if (capture.shot_noise_scale > 0.0)
          n += capture.shot_noise_scale * std::sqrt(std::max(rel, 0.0)) *
               gaussian_hash(key, i * 2 + 1);
        rel += n;
      }
      out.data[i] = capture.crf.exposure_to_dn(std::max(rel, 0.0));
    }
  }
  return out;
}

RenderedSequence render_sequence(const SceneSpec& scene, const CaptureSpec& capture, int cycles) {
  if (cycles <= 0) throw DomainError("cycle count must be positive");
  if (static_cast<int>(capture.path_centers.size()) < cycles)
    throw DomainError("capture path must provide a center per cycle");
  if (capture.ladder_us.empty()) throw DomainError("exposure ladder is empty");

  const RadianceImage canvas = generate_radiance_canvas(scene);
  const int brackets = static_cast<int>(capture.ladder_us.size());

  RenderedSequence seq;
  seq.cycles.reserve(cycles);
  seq.ground_truth.poses.reserve(static_cast<std::size_t>(cycles) * brackets);

  std::int64_t frame_global = 0;
  for (int c = 0; c < cycles; ++c) {
    const auto& center = capture.path_centers[c];
    // Drift direction follows the path; the window keeps moving during the
    // cycle, which is what makes bracket selection non-trivial.
    double dirx = 1.0;
    double diry = 0.0;
    if (c + 1 < static_cast<int>(capture.path_centers.size())) {
      const double ddx = capture.path_centers[c + 1][0] - center[0];
      const double ddy = capture.path_centers[c + 1][1] - center[1];
      const double norm = std::hypot(ddx, ddy);
      if (norm > 0) {
        dirx = ddx / norm;
        diry = ddy / norm;
      }
    }

    BracketCycle cycle;
    cycle.cycle_index = c;
    cycle.ladder_us = capture.ladder_us;
    cycle.images.reserve(brackets);
    for (int b = 0; b < brackets; ++b, ++frame_global) {
      const double cx = center[0] + capture.drift_px_per_bracket * b * dirx;
      const double cy = center[1] + capture.drift_px_per_bracket * b * diry;
      CropWindow window{cx - 0.5 * capture.frame_width, cy - 0.5 * capture.frame_height};
      RawImage img = render_frame(canvas, window, capture.ladder_us[b], capture,
                                  static_cast<std::uint64_t>(frame_global));
      img.timestamp_ns =
          static_cast<std::int64_t>(std::llround(frame_global * 1e9 / capture.fps));
      img.frame_index = frame_global;
      cycle.images.push_back(std::move(img));

      PoseSE3 pose;
      pose.translation =
          Eigen::Vector3d(cx * capture.meters_per_px, cy * capture.meters_per_px, 0.0);
      pose.timestamp_ns = cycle.images.back().timestamp_ns;
      seq.ground_truth.poses.push_back(pose);

      FrameRecordEntry entry;
      entry.frame_index = frame_global;
      entry.cycle_index = c;
      entry.exposure_us = capture.ladder_us[b];
      entry.timestamp_ns = cycle.images.back().timestamp_ns;
      char name[64];
      std::snprintf(name, sizeof(name), "images/frame_%06lld.pgm",
                    static_cast<long long>(frame_global));
      entry.filename = name;
      seq.manifest.frames.push_back(std::move(entry));
    }
    seq.cycles.push_back(std::move(cycle));
  }
  return seq;
}

std::vector<RawImage> render_exposure_sweep(const SceneSpec& scene, const CaptureSpec& capture,
                                            const std::vector<double>& exposures_us) {
  const RadianceImage canvas = generate_radiance_canvas(scene);
  CropWindow window{0.5 * (canvas.width - capture.frame_width),
                    0.5 * (canvas.height - capture.frame_height)};
  std::vector<RawImage> frames;
  frames.reserve(exposures_us.size());
  for (std::size_t i = 0; i < exposures_us.size(); ++i) {
    RawImage img = render_frame(canvas, window, exposures_us[i], capture,
                                (1ULL << 32) + i);
    img.timestamp_ns = static_cast<std::int64_t>(std::llround(i * 1e9 / capture.fps));
    img.frame_index = static_cast<std::int64_t>(i);
    frames.push_back(std::move(img));
  }
  return frames;
}

std::vector<double> log_spaced_exposures(double min_us, double max_us, int count) {
  if (count <= 0 || !(min_us > 0.0) || !(max_us > min_us))
    throw DomainError("invalid log-spaced exposure request");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = min_us;
    return out;
  }
  const double lo = std::log(min_us);
  const double hi = std::log(max_us);
  for (int i = 0; i < count; ++i) out[i] = std::exp(lo + (hi - lo) * i / (count - 1));
  return out;
}

}  // namespace aebench
