#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "aebench/ae_config.hpp"
#include "aebench/emulation.hpp"
#include "aebench/image.hpp"
#include "aebench/response_curve.hpp"

namespace aebench {

struct AEDecision {
  double next_exposure_us = 0.0;  // always inside [exposure_min, exposure_max]
  double metric_value = 0.0;      // controller's quality score for the current frame
};

// Stateful exposure policy: current frame in, next exposure out. step is
// deterministic given the controller state, image and config.
class AEController {
public:
  virtual ~AEController() = default;
  virtual std::string_view name() const = 0;
  virtual double initial_exposure_us() const = 0;
  virtual AEDecision step(const RawImage& img) = 0;
};

enum class ControllerKind { kFixed, kTarget30, kTarget50, kTarget70, kShim, kZhang, kKimGp };

std::string_view controller_name(ControllerKind kind);
ControllerKind controller_from_name(std::string_view name);  // throws DomainError
std::vector<ControllerKind> all_controller_kinds();

// Calibrated constant exposure: bisection over log exposure solving
// mean_brightness(emulate_from_cycle(first_cycle, t)) = 0.5.
double fixed_ae_init(const BracketCycle& first_cycle, const ResponseCurve& crf,
                     const AEConfig& config);

// Damped multiplicative brightness servo used by the 30/50/70 % baselines.
AEDecision target_brightness_step(double current_exposure_us, const RawImage& img, double target,
                                  const AEConfig& config);

// Factory. The fixed controller calibrates against first_cycle; Zhang needs
// the CRF for candidate self-emulation. Both pointers may be null for
// controllers that do not use them.
std::unique_ptr<AEController> make_controller(ControllerKind kind, const AEConfig& config,
                                              const ResponseCurve* crf,
                                              const BracketCycle* first_cycle);

struct FrameRecord {
  std::int64_t frame = 0;
  std::int64_t cycle = 0;
  double exposure_us = 0.0;         // exposure the frame was emulated at
  double source_bracket_us = 0.0;   // bracket chosen by the selector
  double metric_value = 0.0;
  double mean_brightness = 0.0;
  double saturation_fraction = 0.0;
};

struct ControllerRun {
  std::vector<EmulatedImage> frames;
  std::vector<AEDecision> decisions;
  std::vector<FrameRecord> records;
};

// Closed loop over a recorded sequence: emulate at the controller's current
// exposure, record, then step the controller for the next cycle.
ControllerRun run_controller(const std::vector<BracketCycle>& sequence, AEController& controller,
                             const ResponseCurve& crf, const AEConfig& config);

std::string frame_records_csv(const std::vector<FrameRecord>& records);

}  // namespace aebench
