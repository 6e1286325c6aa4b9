#include "aebench/image.hpp"

#include <string>

namespace aebench {

void validate(const RawImage& img) {
  if (img.width <= 0 || img.height <= 0)
    throw DomainError("image dimensions must be positive");
  if (img.data.size() != img.pixel_count())
    throw DomainError("image buffer size does not match dimensions");
  if (!(img.exposure_us > 0.0))
    throw DomainError("image exposure must be positive");
  for (std::uint16_t dn : img.data)
    if (dn > kDnMax) throw DomainError("digital number exceeds 4095");
}

void validate(const RadianceImage& img) {
  if (img.width <= 0 || img.height <= 0)
    throw DomainError("radiance dimensions must be positive");
  if (img.data.size() != static_cast<std::size_t>(img.width) * img.height)
    throw DomainError("radiance buffer size does not match dimensions");
  for (float v : img.data)
    if (!(v >= 0.0f)) throw DomainError("radiance values must be non-negative");
  if (!img.vignette.empty()) {
    if (img.vignette.size() != img.data.size())
      throw DomainError("vignette size does not match radiance buffer");
    for (float v : img.vignette)
      if (!(v > 0.0f && v <= 1.0f)) throw DomainError("vignette values must lie in (0, 1]");
  }
}

void validate(const BracketCycle& cycle) {
  if (cycle.images.empty()) throw DomainError("bracket cycle is empty");
  if (cycle.ladder_us.size() != cycle.images.size())
    throw DomainError("ladder length does not match bracket count");
  for (std::size_t i = 0; i < cycle.images.size(); ++i) {
    validate(cycle.images[i]);
    if (cycle.images[i].exposure_us != cycle.ladder_us[i])
      throw DomainError("bracket exposure does not match ladder entry " + std::to_string(i));
    if (!cycle.images[i].same_size(cycle.images.front()))
      throw DomainError("bracket images must share dimensions");
    if (i > 0 && !(cycle.ladder_us[i] > cycle.ladder_us[i - 1]))
      throw DomainError("ladder exposures must strictly increase");
  }
}

void validate(const CalibrationStack& stack) {
  if (stack.images.size() < 3)
    throw CalibrationError("calibration requires at least 3 images, got " +
                           std::to_string(stack.images.size()));
  for (std::size_t i = 0; i < stack.images.size(); ++i) {
    validate(stack.images[i]);
    if (!stack.images[i].same_size(stack.images.front()))
      throw DomainError("calibration images must share dimensions");
    if (i > 0 && !(stack.images[i].exposure_us > stack.images[i - 1].exposure_us))
      throw DomainError("calibration exposures must strictly increase");
  }
}

}  // namespace aebench
