#include "fracdrift/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace fracdrift {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_grid_csv(std::ostream& out, const TimeGrid& grid) {
  out << "index,tau\n";
  const auto taus = grid.taus();
  for (std::size_t i = 0; i < taus.size(); ++i)
    out << (i + 1) << ',' << format_double(taus[i]) << '\n';
}

void write_series_csv(std::ostream& out, const ObservationSeries& s) {
  out << "index,tau,y\n";
  const auto taus = s.grid.taus();
  for (std::size_t i = 0; i < taus.size(); ++i)
    out << (i + 1) << ',' << format_double(taus[i]) << ','
        << format_double(s.y[i]) << '\n';
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& field, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0')
    throw CsvError("line " + std::to_string(line_no) +
                   ": not a number: '" + field + "'");
  return v;
}

}  // namespace

ObservationSeries read_series_csv(std::istream& in,
                                  std::optional<double> true_a) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_csv_line(line);
  std::size_t tau_col = header.size(), y_col = header.size();
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "tau") tau_col = c;
    if (header[c] == "y") y_col = c;
  }
  if (tau_col == header.size() || y_col == header.size())
    throw CsvError("header must contain 'tau' and 'y' columns");

  std::vector<double> taus, ys;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() <= std::max(tau_col, y_col))
      throw CsvError("line " + std::to_string(line_no) + ": too few fields");
    const double tau = parse_double(fields[tau_col], line_no);
    const double y = parse_double(fields[y_col], line_no);
    if (!taus.empty() && !(tau > taus.back()))
      throw CsvError("line " + std::to_string(line_no) +
                     ": tau not strictly increasing (" + fields[tau_col] +
                     " after " + format_double(taus.back()) + ")");
    if (taus.empty() && !(tau > 0.0))
      throw CsvError("line " + std::to_string(line_no) +
                     ": first tau must be positive");
    taus.push_back(tau);
    ys.push_back(y);
  }
  if (taus.empty()) throw CsvError("no data rows");

  // External data carries no scheme provenance; tag as deterministic, which
  // imposes no shape constraint here.
  return ObservationSeries{TimeGrid::from_times(Scheme::Deterministic, taus),
                           std::move(ys), true_a};
}

void write_estimates_csv(std::ostream& out, const ExperimentReport& rep) {
  out << "replicate,a_hat\n";
  for (std::size_t r = 0; r < rep.estimates.size(); ++r)
    out << r << ',' << format_double(rep.estimates[r]) << '\n';
}

void write_summary_csv(std::ostream& out, const ExperimentReport& rep) {
  out << "scheme,H,a,N,M,seed,mean,sd,kurt_raw,kurt_gap\n";
  out << to_string(rep.config.scheme) << ','
      << format_double(rep.config.hurst) << ','
      << format_double(rep.config.a_true) << ',' << rep.config.n << ','
      << rep.config.m << ',' << rep.config.seed << ','
      << format_double(rep.mean) << ',' << format_double(rep.sd) << ','
      << format_double(rep.kurt_raw) << ',' << format_double(rep.kurtosis_gap)
      << '\n';
}

void write_trace_csv(std::ostream& out, const ExperimentReport& rep) {
  out << "N,mean,sd\n";
  for (const auto& row : rep.trace)
    out << row.n << ',' << format_double(row.mean) << ','
        << format_double(row.sd) << '\n';
}

void write_rate_csv(std::ostream& out, const ExperimentReport& rep) {
  out << "N,mean_sq_an\n";
  for (const auto& row : rep.rate)
    out << row.n << ',' << format_double(row.mean_sq_an) << '\n';
}

void write_hist_csv(std::ostream& out, const ExperimentReport& rep) {
  out << "bin_left,bin_right,count\n";
  const auto& h = rep.histogram;
  for (std::size_t b = 0; b < h.counts.size(); ++b)
    out << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1])
        << ',' << h.counts[b] << '\n';
}

}  // namespace fracdrift
