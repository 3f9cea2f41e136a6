#pragma once

#include <span>

namespace hddist {

// Sample quantile by linear interpolation between order statistics: with
// sorted values v(1..n) and h = (n-1)*prob + 1,
//   Q(prob) = v(floor h) + (h - floor h) * (v(floor h + 1) - v(floor h)).
// Throws UsageError on empty input or prob outside [0, 1].
double quantile(std::span<const double> values, double prob);

// Same estimator on data the caller has already sorted ascending.
double quantile_sorted(std::span<const double> sorted, double prob);

double median(std::span<const double> values);

}  // namespace hddist
