#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fracdrift/stats.hpp"
#include "fracdrift/time_grid.hpp"

namespace fracdrift {

enum class NoiseKind { Fbm, None };  // None: zero noise, exactness checks

// One experiment: m independent replicates of grid -> path -> series ->
// estimate. Replicate r draws from the child stream (seed, r); sweeps key
// their streams by (seed, N, r). Identical configs therefore produce
// bit-identical reports at any worker count.
struct ExperimentConfig {
  Scheme scheme = Scheme::Jittered;
  double a_true = 2.0;
  double hurst = 0.75;
  double sigma = 1.0;
  std::size_t n = 300;
  std::size_t m = 1000;
  std::uint64_t seed = 0;
  std::vector<std::size_t> rate_check_ns;
  unsigned threads = 0;  // 0 = hardware concurrency
  NoiseKind noise = NoiseKind::Fbm;

  void validate() const;
};

struct TraceRow {
  std::size_t n;
  double mean;
  double sd;
};

struct RateRow {
  std::size_t n;
  double mean_sq_an;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<double> estimates;  // per-replicate a_hat (largest N for sweeps)
  double mean = 0.0;
  double sd = 0.0;
  double kurt_raw = 0.0;       // NaN when variance degenerates
  double kurtosis_gap = 0.0;   // 3 - kurt_raw
  Histogram histogram;
  std::vector<TraceRow> trace;          // convergence runs
  std::vector<RateRow> rate;            // rate-check runs
  std::optional<LineFit> rate_fit;      // slope of log E[A_N^2] vs log N
};

// Summary statistics of a_hat over m replicates at fixed N.
ExperimentReport run_table(const ExperimentConfig& config);

// Mean and sd of a_hat for every N = 1..config.n, resimulated independently
// per (N, replicate).
ExperimentReport run_convergence_trace(const ExperimentConfig& config);

// Empirical E[A_N^2] over config.rate_check_ns (needs the true drift), with a
// log-log least-squares slope. Requires >= 3 distinct N and m >= 2000.
ExperimentReport run_rate_check(const ExperimentConfig& config);

}  // namespace fracdrift
