#pragma once

#include "aebench/image.hpp"
#include "aebench/response_curve.hpp"

namespace aebench {

// Recovers the inverse CRF from a static-scene multi-exposure stack.
//
// Log-domain least squares over sampled pixel/exposure pairs with
// second-difference smoothness (weight lambda_smooth) and hat weighting that
// down-weights digital numbers near the range ends. The solved curve is
// projected to monotone by isotonic regression, unobserved bins are filled by
// linear interpolation, and the table is renormalized to end at 1.
//
// sample_count pixels are taken on a uniform spatial grid; pixels saturated
// in every stack image are dropped. Throws CalibrationError when fewer than
// 3 images are given or no sample survives saturation.
ResponseCurve estimate_inverse_crf(const CalibrationStack& stack, double lambda_smooth = 50.0,
                                   int sample_count = 256);

// Weighted pool-adjacent-violators projection to a non-decreasing sequence.
std::vector<double> isotonic_regression(const std::vector<double>& values,
                                        const std::vector<double>& weights);

}  // namespace aebench
