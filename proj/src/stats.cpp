#include "fracdrift/stats.hpp"

#include <algorithm>
#include <cmath>

namespace fracdrift {

namespace {

double pairwise_sum_impl(const double* v, std::size_t n) {
  if (n <= 32) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_impl(v, half) + pairwise_sum_impl(v + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  return values.empty() ? 0.0 : pairwise_sum_impl(values.data(), values.size());
}

double mean(std::span<const double> values) {
  if (values.empty()) throw EmptySeries("mean of an empty sample");
  return pairwise_sum(values) / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.empty()) throw EmptySeries("sd of an empty sample");
  const std::size_t n = values.size();
  if (n == 1) return 0.0;
  const double mu = mean(values);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = values[i] - mu;
    sq[i] = d * d;
  }
  return std::sqrt(pairwise_sum(sq) / static_cast<double>(n - 1));
}

double kurtosis_raw(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 4) throw DegenerateVariance("kurtosis needs at least 4 samples");
  const double mu = mean(samples);
  std::vector<double> d2(n), d4(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = samples[i] - mu;
    d2[i] = d * d;
    d4[i] = d2[i] * d2[i];
  }
  const double m2 = pairwise_sum(d2) / static_cast<double>(n);
  if (m2 <= 0.0) throw DegenerateVariance("kurtosis of a constant sample");
  const double m4 = pairwise_sum(d4) / static_cast<double>(n);
  return m4 / (m2 * m2);
}

double kurtosis_gap(std::span<const double> samples) {
  return 3.0 - kurtosis_raw(samples);
}

Histogram make_histogram(std::span<const double> samples, int bins) {
  if (samples.empty()) throw EmptySeries("histogram of an empty sample");
  if (bins < 1) throw DomainError("histogram needs at least one bin");
  const double mu = mean(samples);
  const double sd = sample_sd(samples);
  double lo = mu - 4.0 * sd;
  double hi = mu + 4.0 * sd;
  if (!(hi > lo)) {  // constant sample
    lo = mu - 0.5;
    hi = mu + 0.5;
  }
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  const double width = (hi - lo) / bins;
  for (int b = 0; b <= bins; ++b) h.edges[static_cast<std::size_t>(b)] = lo + width * b;
  for (double v : samples) {
    auto idx = static_cast<long>(std::floor((v - lo) / width));
    idx = std::clamp<long>(idx, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  return h;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("fit_line: size mismatch");
  if (x.size() < 2) throw DomainError("fit_line: needs at least two points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_line: degenerate abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace fracdrift
