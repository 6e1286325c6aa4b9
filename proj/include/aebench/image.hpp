#pragma once

#include <cstdint>
#include <vector>

#include "aebench/errors.hpp"

namespace aebench {

inline constexpr int kDnBits = 12;
inline constexpr std::uint16_t kDnMax = 4095;
inline constexpr int kLutSize = kDnMax + 1;

// Single-channel 12-bit image. Digital numbers live in a 16-bit container,
// row-major, tagged with the exposure time that produced them.
struct RawImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> data;
  double exposure_us = 0.0;
  std::int64_t timestamp_ns = 0;
  std::int64_t frame_index = 0;

  RawImage() = default;
  RawImage(int w, int h, double exp_us, std::uint16_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill), exposure_us(exp_us) {}

  std::uint16_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  std::uint16_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
  bool same_size(const RawImage& o) const { return width == o.width && height == o.height; }
};

// Throws DomainError unless dimensions are positive, every DN <= 4095 and
// the exposure is positive.
void validate(const RawImage& img);

// Relative scene radiance, unitless and non-negative. The optional vignette
// field stores a per-pixel attenuation in (0, 1].
struct RadianceImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;
  std::vector<float> vignette;  // empty or same size as data

  RadianceImage() = default;
  RadianceImage(int w, int h)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, 0.0f) {}

  float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  bool has_vignette() const { return !vignette.empty(); }
};

void validate(const RadianceImage& img);

// One bracketing cycle: images at strictly increasing exposures matching the
// configured ladder.
struct BracketCycle {
  std::vector<RawImage> images;
  std::int64_t cycle_index = 0;
  std::vector<double> ladder_us;
};

// Throws DomainError unless the cycle is non-empty, dimensions agree and the
// exposures strictly increase along the ladder.
void validate(const BracketCycle& cycle);

// Static-scene multi-exposure stack used for CRF estimation.
struct CalibrationStack {
  std::vector<RawImage> images;
};

// Throws CalibrationError for fewer than 3 images, DomainError for dimension
// or exposure-ordering violations.
void validate(const CalibrationStack& stack);

inline std::vector<double> default_ladder_us() { return {1000, 2000, 4000, 8000, 16000, 32000}; }

}  // namespace aebench
