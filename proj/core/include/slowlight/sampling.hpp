#pragma once

#include <span>

namespace slowlight {

// First moment of `weight` over abscissae `x`. Throws DomainError when the
// weights integrate to zero.
double centroid(std::span<const double> x, std::span<const double> weight);

// Full width at half maximum with linear interpolation between samples.
// Throws AmbiguityError when more than one contiguous region rises above half
// maximum; the exception lists the width of every region.
double full_width_half_max(std::span<const double> x, std::span<const double> y);

// Piecewise-linear interpolation of (x, y) at `at`; x must be strictly
// increasing. Values outside [x.front(), x.back()] return `outside`.
double interpolate_linear(std::span<const double> x, std::span<const double> y, double at,
                          double outside = 0.0);

}  // namespace slowlight
