#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "aebench/image.hpp"
#include "aebench/response_curve.hpp"
#include "aebench/se3.hpp"

namespace aebench {

// Procedural HDR scene: seeded multi-octave value noise shaped into a bimodal
// log-radiance distribution (dark-vegetation vs bright-snow analog).
struct SceneSpec {
  int width = 1024;
  int height = 768;
  double dynamic_range = 4096.0;  // max/min radiance ratio, > 1
  int octaves = 5;
  double base_frequency = 4.0;  // lattice cells across the canvas at octave 0
  double bimodality = 0.7;      // 0 = unimodal, 1 = strongly bimodal
  // Radiance of a mid-gray pixel; chosen so the ladder's geometric mid
  // exposure collects ~0.5 relative exposure there.
  double mid_radiance = 0.5 / 5656.85;
  std::uint64_t seed = 42;
};

struct CropWindow {
  double x0 = 0.0;  // top-left corner in canvas pixels, subpixel positions allowed
  double y0 = 0.0;
};

struct CaptureSpec {
  std::vector<double> ladder_us = default_ladder_us();
  ResponseCurve crf = ResponseCurve::linear();  // ground-truth curve for rendering
  double read_noise_sigma_rel = 0.0;            // additive, in relative-exposure units
  double shot_noise_scale = 0.0;                // optional sqrt(signal)-proportional term
  double vignette_strength = 0.0;               // 0 disables the cos^4 falloff
  int frame_width = 320;
  int frame_height = 240;
  double fps = 22.0;  // bracket rate; cycles advance at fps / ladder size
  double meters_per_px = 0.01;
  std::vector<std::array<double, 2>> path_centers;  // window center per cycle
  double drift_px_per_bracket = 2.0;                // intra-cycle motion
  std::uint64_t noise_seed = 1234;
};

// Straight-line window-center path, step_px per cycle from start.
std::vector<std::array<double, 2>> make_linear_path(std::array<double, 2> start,
                                                    std::array<double, 2> direction,
                                                    double step_px, int cycles);

RadianceImage generate_radiance_canvas(const SceneSpec& spec);

// Forward model: DN = f(exposure * vignette * radiance + noise), quantized and
// clamped. noise_stream salts the per-pixel noise counter so repeated frames
// draw fresh noise. Throws DomainError when the window leaves the canvas.
RawImage render_frame(const RadianceImage& canvas, CropWindow window, double exposure_us,
                      const CaptureSpec& capture, std::uint64_t noise_stream = 0);

struct FrameRecordEntry {
  std::int64_t frame_index = 0;
  std::int64_t cycle_index = 0;
  double exposure_us = 0.0;
  std::int64_t timestamp_ns = 0;
  std::string filename;
};

struct SequenceManifest {
  std::vector<FrameRecordEntry> frames;
  std::string crf_file = "crf.csv";
  std::string trajectory_file = "groundtruth.txt";
};

struct RenderedSequence {
  std::vector<BracketCycle> cycles;
  Trajectory ground_truth;  // one pose per bracket, from window centers
  SequenceManifest manifest;
};

// Renders `cycles` bracketing cycles along the capture path with intra-cycle
// window drift. Brackets are spaced at 1/fps, cycles at ladder_size/fps.
RenderedSequence render_sequence(const SceneSpec& scene, const CaptureSpec& capture, int cycles);

// Fixed-window frames at the requested exposures (fresh noise per frame);
// the ground-truth sweep for emulation validation and the repeat protocol
// behind noise_floor.
std::vector<RawImage> render_exposure_sweep(const SceneSpec& scene, const CaptureSpec& capture,
                                            const std::vector<double>& exposures_us);

std::vector<double> log_spaced_exposures(double min_us, double max_us, int count);

}  // namespace aebench
