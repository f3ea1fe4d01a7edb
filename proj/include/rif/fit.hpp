#pragma once

#include <span>

namespace rif {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    // Max absolute deviation of the data from the fitted line.
    double max_residual = 0.0;
};

// Ordinary least squares y = slope * x + intercept; needs at least two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace rif
