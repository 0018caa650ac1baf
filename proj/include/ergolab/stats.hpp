#pragma once

#include <span>
#include <vector>

namespace ergolab {

/// Least-squares slope of y against x.
double ls_slope(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of log(y) against log(x). Non-positive y are rejected.
double log_log_slope(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> v);

}  // namespace ergolab
