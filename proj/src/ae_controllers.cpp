#include "aebench/ae_controllers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "aebench/ae_metrics.hpp"
#include "aebench/fs_util.hpp"
#include "aebench/gp.hpp"

namespace aebench {

std::string_view controller_name(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kFixed: return "fixed";
    case ControllerKind::kTarget30: return "target30";
    case ControllerKind::kTarget50: return "target50";
    case ControllerKind::kTarget70: return "target70";
    case ControllerKind::kShim: return "shim";
    case ControllerKind::kZhang: return "zhang";
    case ControllerKind::kKimGp: return "kim";
  }
  return "unknown";
}

ControllerKind controller_from_name(std::string_view name) {
  for (ControllerKind kind : all_controller_kinds())
    if (controller_name(kind) == name) return kind;
  throw DomainError("unknown controller: " + std::string(name));
}

std::vector<ControllerKind> all_controller_kinds() {
  return {ControllerKind::kFixed,  ControllerKind::kTarget30, ControllerKind::kTarget50,
          ControllerKind::kTarget70, ControllerKind::kShim,   ControllerKind::kZhang,
          ControllerKind::kKimGp};
}

double fixed_ae_init(const BracketCycle& first_cycle, const ResponseCurve& crf,
                     const AEConfig& config) {
  validate(first_cycle);
  auto brightness_at = [&](double exposure_us) {
    return mean_brightness(
        emulate_from_cycle(first_cycle, exposure_us, crf, config.sat_threshold).image);
  };
  const double target = 0.5;
  double lo = std::log(config.exposure_min_us);
  double hi = std::log(config.exposure_max_us);
  if (brightness_at(config.exposure_min_us) >= target) return config.exposure_min_us;
  if (brightness_at(config.exposure_max_us) <= target) return config.exposure_max_us;
  for (int i = 0; i < config.fixed_bisection_iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (brightness_at(std::exp(mid)) < target)
      lo = mid;
    else
      hi = mid;
  }
  return config.clamp_exposure(std::exp(0.5 * (lo + hi)));
}

AEDecision target_brightness_step(double current_exposure_us, const RawImage& img, double target,
                                  const AEConfig& config) {
  if (!(target > 0.0 && target < 1.0)) throw DomainError("brightness target must lie in (0, 1)");
  const double eps = 1.0 / kDnMax;
  const double mean = mean_brightness(img);
  double ratio = std::pow(target / std::max(mean, eps), config.target_alpha);
  ratio = std::clamp(ratio, 1.0 / config.target_ratio_clamp, config.target_ratio_clamp);
  AEDecision decision;
  decision.next_exposure_us = config.clamp_exposure(current_exposure_us * ratio);
  decision.metric_value = mean;
  return decision;
}

namespace {

class FixedController final : public AEController {
public:
  FixedController(const BracketCycle& first_cycle, const ResponseCurve& crf,
                  const AEConfig& config)
      : exposure_us_(fixed_ae_init(first_cycle, crf, config)) {}
  std::string_view name() const override { return "fixed"; }
  double initial_exposure_us() const override { return exposure_us_; }
  AEDecision step(const RawImage& img) override {
    return {exposure_us_, mean_brightness(img)};
  }

private:
  double exposure_us_;
};

class TargetBrightnessController final : public AEController {
public:
  TargetBrightnessController(double target, std::string name, const AEConfig& config)
      : target_(target), name_(std::move(name)), config_(config),
        current_us_(config.clamp_exposure(config.initial_exposure_us)) {}
  std::string_view name() const override { return name_; }
  double initial_exposure_us() const override { return current_us_; }
  AEDecision step(const RawImage& img) override {
    const AEDecision decision = target_brightness_step(current_us_, img, target_, config_);
    current_us_ = decision.next_exposure_us;
    return decision;
  }

private:
  double target_;
  std::string name_;
  AEConfig config_;
  double current_us_;
};

class ShimController final : public AEController {
public:
  explicit ShimController(const AEConfig& config)
      : config_(config), current_us_(config.clamp_exposure(config.initial_exposure_us)) {}
  std::string_view name() const override { return "shim"; }
  double initial_exposure_us() const override { return current_us_; }

  AEDecision step(const RawImage& img) override {
    // Candidates ordered by distance of the resulting update from 1x, so a
    // flat metric keeps the exposure unchanged.
    static constexpr double kGammas[7] = {1.0,       1.0 / 1.2, 1.2,      1.0 / 1.5,
                                          1.5,       1.0 / 1.9, 1.9};
    std::vector<float> normalized(img.data.size());
    const std::int64_t n = static_cast<std::int64_t>(img.data.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
      normalized[i] = static_cast<float>(img.data[i]) / static_cast<float>(kDnMax);

    double best_metric = -1.0;
    double best_gamma = 1.0;
    double current_metric = 0.0;
    std::vector<float> candidate(normalized.size());
    for (double gamma : kGammas) {
      const float inv_gamma = static_cast<float>(1.0 / gamma);
#pragma omp parallel for schedule(static)
      for (std::int64_t i = 0; i < n; ++i) candidate[i] = std::pow(normalized[i], inv_gamma);
      const double metric = shim_shaped_mean(gradient_magnitudes(candidate, img.width, img.height),
                                             config_.shim_delta, config_.shim_lambda);
      if (gamma == 1.0) current_metric = metric;
      if (metric > best_metric) {
        best_metric = metric;
        best_gamma = gamma;
      }
    }
    const double next =
        config_.clamp_exposure(current_us_ * (1.0 + config_.shim_kp * (best_gamma - 1.0)));
    current_us_ = next;
    return {next, current_metric};
  }

private:
  AEConfig config_;
  double current_us_;
};

class ZhangController final : public AEController {
public:
  ZhangController(const ResponseCurve& crf, const AEConfig& config)
      : crf_(crf), config_(config),
        current_us_(config.clamp_exposure(config.initial_exposure_us)) {}
  std::string_view name() const override { return "zhang"; }
  double initial_exposure_us() const override { return current_us_; }

  AEDecision step(const RawImage& img) override {
    // Log-spaced candidate exposures around the current one, scanned nearest
    // first so argmax ties break toward the current exposure.
    std::vector<double> exponents;
    exponents.reserve(config_.zhang_candidates);
    const int half = config_.zhang_candidates / 2;
    const double step_stops = config_.zhang_span_stops / half;
    exponents.push_back(0.0);
    for (int k = 1; k <= half; ++k) {
      exponents.push_back(-k * step_stops);
      exponents.push_back(k * step_stops);
    }

    double best_metric = -1.0;
    double best_exposure = current_us_;
    double current_metric = 0.0;
    for (double e : exponents) {
      const double t = current_us_ * std::exp2(e);
      const RawImage candidate = emulate(img, t, crf_);
      const double metric = zhang_metric(candidate, config_.zhang_knee, config_.zhang_softness);
      if (e == 0.0) current_metric = metric;
      if (metric > best_metric) {
        best_metric = metric;
        best_exposure = t;
      }
    }
    const double next = config_.clamp_exposure(std::exp(
        (1.0 - config_.zhang_mu) * std::log(current_us_) + config_.zhang_mu * std::log(best_exposure)));
    current_us_ = next;
    return {next, current_metric};
  }

private:
  const ResponseCurve& crf_;
  AEConfig config_;
  double current_us_;
};

class KimGpController final : public AEController {
public:
  explicit KimGpController(const AEConfig& config)
      : config_(config), current_us_(config.clamp_exposure(config.initial_exposure_us)) {}
  std::string_view name() const override { return "kim"; }
  double initial_exposure_us() const override { return current_us_; }

  AEDecision step(const RawImage& img) override {
    const double metric = kim_metric(img, config_.kim_alpha_mix);
    window_.emplace_back(std::log2(img.exposure_us), metric);
    while (static_cast<int>(window_.size()) > config_.gp_window) window_.pop_front();

    std::vector<double> xs, ys;
    xs.reserve(window_.size());
    ys.reserve(window_.size());
    for (const auto& [x, y] : window_) {
      xs.push_back(x);
      ys.push_back(y);
    }
    // The kernel amplitude tracks the window's metric spread (floored so a
    // fresh window still explores). With a fixed unit amplitude the UCB
    // exploration bonus would dwarf any achievable metric gap forever and the
    // controller could never concentrate.
    double y_mean = 0.0;
    for (double y : ys) y_mean += y;
    y_mean /= static_cast<double>(ys.size());
    double y_var = 0.0;
    for (double y : ys) y_var += (y - y_mean) * (y - y_mean);
    y_var /= static_cast<double>(ys.size());
    const double y_scale = std::max(std::sqrt(y_var), 0.05);
    const double amp = config_.gp_signal_var * y_scale * y_scale;
    const Gp1d gp(xs, ys, {config_.gp_length_scale, amp, config_.gp_noise_var * amp});

    // Annealed exploration: early steps sweep the exposure range, later ones
    // exploit the posterior mean. A constant bonus would tour the domain
    // forever once window eviction reopens explored regions.
    const double kappa = config_.gp_ucb_kappa * std::pow(config_.gp_kappa_decay, step_count_);
    ++step_count_;

    const double lo = std::log2(config_.exposure_min_us);
    const double hi = std::log2(config_.exposure_max_us);
    const double log_current = std::log2(current_us_);
    double best_ucb = -std::numeric_limits<double>::infinity();
    double best_dist = std::numeric_limits<double>::infinity();
    double best_x = log_current;
    for (int i = 0; i < config_.gp_grid_points; ++i) {
      const double x = lo + (hi - lo) * i / (config_.gp_grid_points - 1);
      const Gp1d::Posterior post = gp.predict(x);
      const double ucb = post.mean + kappa * post.stddev;
      const double dist = std::abs(x - log_current);
      if (ucb > best_ucb || (ucb == best_ucb && dist < best_dist)) {
        best_ucb = ucb;
        best_dist = dist;
        best_x = x;
      }
    }
    const double next = config_.clamp_exposure(std::exp2(best_x));
    current_us_ = next;
    return {next, metric};
  }

private:
  AEConfig config_;
  double current_us_;
  int step_count_ = 0;
  std::deque<std::pair<double, double>> window_;
};

}  // namespace

std::unique_ptr<AEController> make_controller(ControllerKind kind, const AEConfig& config,
                                              const ResponseCurve* crf,
                                              const BracketCycle* first_cycle) {
  switch (kind) {
    case ControllerKind::kFixed:
      if (crf == nullptr || first_cycle == nullptr)
        throw DomainError("fixed controller needs a CRF and the first cycle");
      return std::make_unique<FixedController>(*first_cycle, *crf, config);
    case ControllerKind::kTarget30:
      return std::make_unique<TargetBrightnessController>(0.3, "target30", config);
    case ControllerKind::kTarget50:
      return std::make_unique<TargetBrightnessController>(0.5, "target50", config);
    case ControllerKind::kTarget70:
      return std::make_unique<TargetBrightnessController>(0.7, "target70", config);
    case ControllerKind::kShim:
      return std::make_unique<ShimController>(config);
    case ControllerKind::kZhang:
      if (crf == nullptr) throw DomainError("zhang controller needs a CRF");
      return std::make_unique<ZhangController>(*crf, config);
    case ControllerKind::kKimGp:
      return std::make_unique<KimGpController>(config);
  }
  throw DomainError("unknown controller kind");
}

ControllerRun run_controller(const std::vector<BracketCycle>& sequence, AEController& controller,
                             const ResponseCurve& crf, const AEConfig& config) {
  if (sequence.empty()) throw DomainError("controller run needs a non-empty sequence");
  ControllerRun run;
  run.frames.reserve(sequence.size());
  run.decisions.reserve(sequence.size());
  run.records.reserve(sequence.size());

  double exposure_us = config.clamp_exposure(controller.initial_exposure_us());
  std::int64_t frame = 0;
  for (const BracketCycle& cycle : sequence) {
    EmulatedImage em = emulate_from_cycle(cycle, exposure_us, crf, config.sat_threshold);
    const AEDecision decision = controller.step(em.image);

    FrameRecord rec;
    rec.frame = frame++;
    rec.cycle = cycle.cycle_index;
    rec.exposure_us = exposure_us;
    rec.source_bracket_us = em.source_exposure_us;
    rec.metric_value = decision.metric_value;
    rec.mean_brightness = mean_brightness(em.image);
    rec.saturation_fraction = saturation_stats(em.image).fraction;
    run.records.push_back(rec);
    run.frames.push_back(std::move(em));
    run.decisions.push_back(decision);

    exposure_us = decision.next_exposure_us;
  }
  return run;
}

std::string frame_records_csv(const std::vector<FrameRecord>& records) {
  std::string out =
      "frame,cycle,exposure_us,source_bracket_us,metric_value,mean_brightness,"
      "saturation_fraction\n";
  for (const FrameRecord& r : records) {
    out += std::to_string(r.frame);
    out += ',';
    out += std::to_string(r.cycle);
    out += ',';
    out += format_double(r.exposure_us);
    out += ',';
    out += format_double(r.source_bracket_us);
    out += ',';
    out += format_double(r.metric_value);
    out += ',';
    out += format_double(r.mean_brightness);
    out += ',';
    out += format_double(r.saturation_fraction);
    out += '\n';
  }
  return out;
}

}  // namespace aebench
