#pragma once

#include <span>

namespace chsplit {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = slope x + intercept. Needs at least two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Slope of log y against log x.
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace chsplit
