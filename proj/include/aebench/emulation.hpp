#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "aebench/image.hpp"
#include "aebench/response_curve.hpp"

namespace aebench {

struct SaturationStats {
  std::int64_t under_count = 0;  // pixels at DN 0
  std::int64_t over_count = 0;   // pixels at DN 4095
  double fraction = 0.0;         // (under + over) / total
};

struct EmulatedImage {
  RawImage image;
  int source_index = 0;
  double source_exposure_us = 0.0;
};

// Per-DN output table for one exposure ratio. Entry d equals
// exposure_to_dn(ratio * dn_to_exposure(d)); the per-pixel emulation below is
// a lookup into this table.
std::array<std::uint16_t, kLutSize> emulation_remap(const ResponseCurve& crf, double ratio);

// Re-exposes a single image to the target exposure time through the inverse
// CRF. Output is clamped to [0, 4095]; metadata is copied from the source
// with the exposure replaced. Throws DomainError for non-positive targets.
RawImage emulate(const RawImage& source, double target_exposure_us, const ResponseCurve& crf);

SaturationStats saturation_stats(const RawImage& img);

// Bracket selection: for targets strictly inside the ladder the higher
// bounding bracket is chosen unless its saturation fraction reaches
// sat_threshold, in which case the lower one is used. Targets equal to a
// ladder value short-circuit to that bracket; targets outside the ladder get
// the closest bracket.
int select_bracket_higher_no_sat(const BracketCycle& cycle, double target_exposure_us,
                                 double sat_threshold = 0.01);

EmulatedImage emulate_from_cycle(const BracketCycle& cycle, double target_exposure_us,
                                 const ResponseCurve& crf, double sat_threshold = 0.01);

// Root-mean-square pixel difference as a percentage of the 12-bit range.
double rmse_percent(const RawImage& a, const RawImage& b);

// Sensor noise estimate: mean rmse_percent between consecutive repeats of the
// same exposure. Requires >= 2 images at identical exposure and dimensions.
double noise_floor(const std::vector<RawImage>& repeats);

struct ValidationPoint {
  double gt_exposure_us = 0.0;
  double rmse_highernosat_pct = 0.0;      // noise-floor-subtracted, floored at 0
  std::vector<double> rmse_per_bracket;   // raw error for each fixed source bracket
  int selected_index = 0;
};

struct ValidationReport {
  std::vector<ValidationPoint> points;
  double median_pct = 0.0;  // over the noise-subtracted selector curve
  double max_pct = 0.0;
  double noise_floor_pct = 0.0;
};

// Ground-truth sweep protocol: emulates every sweep exposure from the cycle
// via the selector, and from each fixed bracket, reporting RMSE curves.
ValidationReport validate_emulation(const std::vector<RawImage>& sweep, const BracketCycle& cycle,
                                    const ResponseCurve& crf, double noise_floor_pct = 0.0,
                                    double sat_threshold = 0.01);

}  // namespace aebench
