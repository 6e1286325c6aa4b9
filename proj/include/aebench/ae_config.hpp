#pragma once

namespace aebench {

// Every controller gain and grid lives here so benchmark runs are
// reproducible bit-for-bit from a saved configuration.
struct AEConfig {
  double exposure_min_us = 20.0;
  double exposure_max_us = 50000.0;
  double initial_exposure_us = 8000.0;  // ladder midpoint; adaptive controllers start here
  double sat_threshold = 0.01;          // HigherNoSat saturation cut

  // target-brightness family
  double target_alpha = 0.8;       // damping exponent on the brightness ratio
  double target_ratio_clamp = 8.0; // per-step multiplier bound
  int fixed_bisection_iters = 20;

  // Shim
  double shim_delta = 0.06;
  double shim_lambda = 1000.0;
  double shim_kp = 0.5;

  // Zhang
  double zhang_knee = 0.8;
  double zhang_softness = 15.0;
  double zhang_mu = 0.6;          // log-domain smoothing toward the best candidate
  double zhang_span_stops = 1.5;  // candidates cover current * 2^[-span, +span]
  int zhang_candidates = 7;

  // Kim + GP
  double kim_alpha_mix = 0.5;
  int gp_window = 10;
  double gp_length_scale = 0.5;  // in log2-exposure units
  double gp_signal_var = 1.0;
  double gp_noise_var = 1e-2;
  double gp_ucb_kappa = 2.0;
  double gp_kappa_decay = 0.9;  // per-step annealing; 1.0 keeps kappa fixed
  int gp_grid_points = 64;

  double clamp_exposure(double exposure_us) const {
    if (exposure_us < exposure_min_us) return exposure_min_us;
    if (exposure_us > exposure_max_us) return exposure_max_us;
    return exposure_us;
  }
};

}  // namespace aebench
