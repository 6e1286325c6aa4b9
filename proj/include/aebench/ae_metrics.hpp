#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "aebench/image.hpp"

namespace aebench {

// Mean digital number as a fraction of full range.
double mean_brightness(const RawImage& img);

// Gradient magnitude per pixel of a [0,1]-normalized intensity field, using
// central differences with clamped borders.
std::vector<float> gradient_magnitudes(const std::vector<float>& normalized, int width,
                                       int height);
std::vector<float> gradient_magnitudes(const RawImage& img);

// Log-shaped mean of gradient magnitudes: magnitudes below delta contribute
// zero, the rest log(lambda*(g-delta)+1)/log(lambda+1).
double shim_shaped_mean(const std::vector<float>& magnitudes, double delta, double lambda);
double shim_gradient_metric(const RawImage& img, double delta, double lambda);

// Percentile-weighted gradient mean: magnitudes sorted ascending, the value
// at rank fraction r weighted by a logistic 1/(1+exp(-softness*(r-knee))),
// with r the rank midpoint (i+0.5)/N.
double zhang_weighted_mean(std::vector<float> magnitudes, double percentile_knee,
                           double softness);
double zhang_metric(const RawImage& img, double percentile_knee, double softness);

// 256-bin histogram of digital numbers (bin = DN / 16).
std::array<std::int64_t, 256> histogram256(const RawImage& img);

// Shannon entropy of a histogram normalized to [0, 1] by log(256).
double normalized_entropy(const std::array<std::int64_t, 256>& hist);

// alpha_mix * gradient term + (1 - alpha_mix) * entropy term, both in [0, 1].
// The gradient term is shim_gradient_metric with delta 0, lambda 1000.
double kim_metric(const RawImage& img, double alpha_mix);

}  // namespace aebench
