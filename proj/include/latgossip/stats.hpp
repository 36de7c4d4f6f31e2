#pragma once

#include <span>
#include <vector>

namespace latgossip {

double mean(std::span<const double> xs);
/// Midpoint of the two middle values for even sizes.
double median(std::vector<double> xs);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Least squares y = c * x with no intercept.
double fit_through_origin(std::span<const double> x, std::span<const double> y);

/// max_i max(y_i / (c x_i), (c x_i) / y_i).
double worst_factor(std::span<const double> x, std::span<const double> y, double c);

}  // namespace latgossip
