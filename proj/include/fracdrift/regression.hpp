#pragma once

#include <optional>
#include <vector>

#include "fracdrift/fbm.hpp"
#include "fracdrift/time_grid.hpp"

namespace fracdrift {

// Observed series y_i = Y_{tau_i}. drift_true is known for simulated data and
// may be declared for external data; it is what makes the noise functional
// recoverable downstream.
struct ObservationSeries {
  TimeGrid grid;
  std::vector<double> y;
  std::optional<double> drift_true;
};

// Y_{tau_i} = a tau_i + (B_{tau_i} - B_{tau_{i-1}}), with B_{tau_0} = B_0 = 0.
// The path must have been sampled on exactly this grid.
ObservationSeries simulate(double drift, const TimeGrid& grid,
                           const GaussianPath& path);

}  // namespace fracdrift
