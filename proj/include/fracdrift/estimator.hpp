#pragma once

#include <cstddef>
#include <optional>

#include "fracdrift/regression.hpp"
#include "fracdrift/time_grid.hpp"

namespace fracdrift {

// Least-squares slope through the origin together with its consistency
// diagnostics:
//
//   a_hat = sum tau_i y_i / sum tau_i^2
//   d_n   = (1/n) sum tau_i^2            (the denominator; tends to 1/3)
//   a_n   = (1/n) sum tau_i (y_i - a tau_i)   when the true drift is known,
//
// so that a_hat - a == a_n / d_n. a_n is computed from residuals, which
// also works for re-loaded data with a declared true drift.
struct EstimateDiagnostics {
  double a_hat;
  double d_n;
  std::optional<double> a_n;
  std::size_t n;
};

EstimateDiagnostics estimate(const ObservationSeries& obs);

double d_n(const TimeGrid& grid);

}  // namespace fracdrift
