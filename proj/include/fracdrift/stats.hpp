#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracdrift/errors.hpp"

namespace fracdrift {

// Cascade (pairwise) summation; rounding error grows like O(log n).
double pairwise_sum(std::span<const double> values);

double mean(std::span<const double> values);

// Sample standard deviation with divisor n-1; returns 0 for a single sample.
double sample_sd(std::span<const double> values);

// Moment-ratio kurtosis m4 / m2^2, no small-sample correction.
// Needs >= 4 samples with nonzero variance.
double kurtosis_raw(std::span<const double> samples);

// Gaussian kurtosis (3) minus the sample kurtosis.
double kurtosis_gap(std::span<const double> samples);

struct Histogram {
  std::vector<double> edges;         // bins + 1 ascending edges
  std::vector<std::size_t> counts;   // samples outside the range land in the end bins
};

// Equal-width bins over [mean - 4 sd, mean + 4 sd]; counts always sum to the
// sample count. Degenerate samples (sd == 0) get a unit-width range.
Histogram make_histogram(std::span<const double> samples, int bins = 30);

struct LineFit {
  double slope;
  double intercept;
};

// Ordinary least squares y = slope * x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace fracdrift
