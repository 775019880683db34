#pragma once

#include <span>
#include <vector>

namespace solarcast {

/// Quantile at fraction p in [0,1] by linear interpolation between closest
/// ranks: rank r = (n-1)*p on the sorted values. This one rank rule backs the
/// IQR fences, summary quartiles, label buckets, and rollup quintiles.
double quantile_sorted(std::span<const double> sorted_values, double p);
double quantile(std::vector<double> values, double p);  // sorts a copy

double mean(std::span<const double> values);
/// Sample standard deviation (n-1 denominator); 0 by convention when n == 1.
double sample_stddev(std::span<const double> values);

/// Pearson r of two equal-length vectors; 0 when either side has zero
/// variance (callers that care check variance themselves).
double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace solarcast
