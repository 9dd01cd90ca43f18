#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "fracdrift/montecarlo.hpp"
#include "fracdrift/regression.hpp"
#include "fracdrift/time_grid.hpp"

namespace fracdrift {

// Round-trip-exact decimal rendering; the byte-reproducibility contract of
// every CSV rests on this.
std::string format_double(double v);

void write_grid_csv(std::ostream& out, const TimeGrid& grid);        // index,tau
void write_series_csv(std::ostream& out, const ObservationSeries& s);  // index,tau,y

// Accepts any CSV with header columns "tau" and "y" (extra columns ignored).
// Throws CsvError naming the offending line on malformed input or a
// non-increasing tau column.
ObservationSeries read_series_csv(std::istream& in,
                                  std::optional<double> true_a);

void write_estimates_csv(std::ostream& out, const ExperimentReport& rep);
void write_summary_csv(std::ostream& out, const ExperimentReport& rep);
void write_trace_csv(std::ostream& out, const ExperimentReport& rep);
void write_rate_csv(std::ostream& out, const ExperimentReport& rep);
void write_hist_csv(std::ostream& out, const ExperimentReport& rep);

}  // namespace fracdrift
