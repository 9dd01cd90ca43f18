#include "fracdrift/estimator.hpp"

#include <vector>

#include "fracdrift/stats.hpp"

namespace fracdrift {

EstimateDiagnostics estimate(const ObservationSeries& obs) {
  if (obs.y.empty()) throw EmptySeries("no observations");
  const auto taus = obs.grid.taus();
  if (obs.y.size() != taus.size())
    throw GridMismatch("series length differs from grid size");

  const std::size_t n = taus.size();
  // Pairwise sums keep the algebraic identities below machine-tight even for
  // very long series.
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) terms[i] = taus[i] * obs.y[i];
  const double sum_ty = pairwise_sum(terms);
  for (std::size_t i = 0; i < n; ++i) terms[i] = taus[i] * taus[i];
  const double sum_tt = pairwise_sum(terms);
  if (!(sum_tt > 0.0)) throw DegenerateDenominator("sum of tau^2 is zero");

  EstimateDiagnostics diag{sum_ty / sum_tt, sum_tt / static_cast<double>(n),
                           std::nullopt, n};
  if (obs.drift_true) {
    const double a = *obs.drift_true;
    for (std::size_t i = 0; i < n; ++i)
      terms[i] = taus[i] * (obs.y[i] - a * taus[i]);
    diag.a_n = pairwise_sum(terms) / static_cast<double>(n);
  }
  return diag;
}

double d_n(const TimeGrid& grid) {
  const auto taus = grid.taus();
  std::vector<double> sq(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) sq[i] = taus[i] * taus[i];
  return pairwise_sum(sq) / static_cast<double>(taus.size());
}

}  // namespace fracdrift
