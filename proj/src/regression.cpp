#include "fracdrift/regression.hpp"

namespace fracdrift {

ObservationSeries simulate(double drift, const TimeGrid& grid,
                           const GaussianPath& path) {
  const auto taus = grid.taus();
  if (path.times.size() != taus.size() || path.values.size() != taus.size())
    throw GridMismatch("path and grid sizes differ");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (path.times[i] != taus[i])
      throw GridMismatch("path was sampled on a different grid (index " +
                         std::to_string(i + 1) + ")");
  }

  std::vector<double> y(taus.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    y[i] = drift * taus[i] + (path.values[i] - prev);
    prev = path.values[i];
  }
  return ObservationSeries{grid, std::move(y), drift};
}

}  // namespace fracdrift
