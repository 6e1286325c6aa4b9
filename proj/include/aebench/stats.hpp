#pragma once

#include <vector>

namespace aebench {

// Median of a copy; average of the two middle elements for even sizes.
double median(std::vector<double> values);

// Linear-interpolated percentile, p in [0, 1].
double percentile(std::vector<double> values, double p);

}  // namespace aebench
