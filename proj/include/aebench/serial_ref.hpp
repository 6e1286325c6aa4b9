#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "aebench/emulation.hpp"
#include "aebench/image.hpp"
#include "aebench/response_curve.hpp"
#include "aebench/se3.hpp"

// Plain single-threaded reference implementations of the hot kernels. They
// follow the defining formulas literally (per-pixel binary search, naive
// double loops) and stay independent of the parallel production paths, which
// the unit tests and the benchmark target compare against them.
namespace aebench::serial {

RawImage emulate(const RawImage& source, double target_exposure_us, const ResponseCurve& crf);

SaturationStats saturation_stats(const RawImage& img);

double rmse_percent(const RawImage& a, const RawImage& b);

double noise_floor(const std::vector<RawImage>& repeats);

double mean_brightness(const RawImage& img);

double shim_gradient_metric(const RawImage& img, double delta, double lambda);

double zhang_metric(const RawImage& img, double percentile_knee, double softness);

double kim_metric(const RawImage& img, double alpha_mix);

std::vector<float> corner_response_map(const RawImage& img);

// Final pose of a relative-pose chain as one left-to-right matrix product.
PoseSE3 chain_product(const std::vector<PoseSE3>& relatives);

}  // namespace aebench::serial
