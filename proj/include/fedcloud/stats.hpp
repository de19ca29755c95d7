#pragma once

#include <span>
#include <vector>

namespace fedcloud::stats {

/// Median; even-length inputs average the two middle elements.
double median(std::span<const double> values);

/// Median absolute deviation around the median.
double mad(std::span<const double> values);

/// Quantile with linear interpolation between order statistics
/// (numpy's default scheme). q in [0, 1].
double quantile(std::span<const double> values, double q);

/// Inter-quartile range: quantile(0.75) - quantile(0.25).
double iqr(std::span<const double> values);

/// Pearson correlation; 0 when either series has zero variance or the
/// series are shorter than 2 samples.
double pearson(std::span<const double> xs, std::span<const double> ys);

}  // namespace fedcloud::stats
