#include "fracdrift/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <set>
#include <string>
#include <thread>

#include "fracdrift/estimator.hpp"
#include "fracdrift/fbm.hpp"
#include "fracdrift/regression.hpp"

namespace fracdrift {

void ExperimentConfig::validate() const {
  if (!(hurst > 0.0) || !(hurst < 1.0))
    throw DomainError("hurst must lie in (0, 1)");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (n == 0) throw DomainError("grid size n must be >= 1");
  if (m == 0) throw DomainError("replicate count m must be >= 1");
}

namespace {

// Index-sharded worker pool. Results are written into slots keyed by index,
// so the outcome does not depend on the thread count. The smallest failing
// index wins the error report.
template <class Body>
void run_parallel(std::size_t count, unsigned threads, const Body& body) {
  unsigned workers = threads ? threads : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (workers > count) workers = static_cast<unsigned>(count ? count : 1);

  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex err_mutex;
  std::size_t err_index = std::numeric_limits<std::size_t>::max();
  std::string err_what;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load(std::memory_order_relaxed)) break;
      try {
        body(i);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (i < err_index) {
          err_index = i;
          err_what = e.what();
        }
        failed.store(true, std::memory_order_relaxed);
        break;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  if (failed.load())
    throw Error("replicate " + std::to_string(err_index) +
                " failed: " + err_what);
}

TimeGrid make_grid(Scheme scheme, std::size_t n, RandomStream& rng) {
  switch (scheme) {
    case Scheme::Deterministic: return TimeGrid::deterministic(n);
    case Scheme::Jittered: return TimeGrid::jittered(n, rng);
    case Scheme::Renewal: return TimeGrid::renewal(n, rng);
  }
  throw DomainError("unknown scheme");
}

GaussianPath zero_path(const TimeGrid& grid) {
  GaussianPath path;
  path.times.assign(grid.taus().begin(), grid.taus().end());
  path.values.assign(grid.size(), 0.0);
  return path;
}

struct ReplicateResult {
  double a_hat;
  double a_n;
};

ReplicateResult run_replicate(const ExperimentConfig& cfg, std::size_t n,
                              RandomStream& rng) {
  const TimeGrid grid = make_grid(cfg.scheme, n, rng);
  GaussianPath path;
  if (cfg.noise == NoiseKind::None) {
    path = zero_path(grid);
  } else {
    path = sample_path(HurstModel(cfg.hurst, cfg.sigma), grid.taus(), rng);
  }
  const auto diag = estimate(simulate(cfg.a_true, grid, path));
  return {diag.a_hat, *diag.a_n};
}

void fill_summary(ExperimentReport& rep) {
  rep.mean = mean(rep.estimates);
  rep.sd = sample_sd(rep.estimates);
  try {
    rep.kurt_raw = kurtosis_raw(rep.estimates);
    rep.kurtosis_gap = 3.0 - rep.kurt_raw;
  } catch (const DegenerateVariance&) {
    rep.kurt_raw = std::numeric_limits<double>::quiet_NaN();
    rep.kurtosis_gap = std::numeric_limits<double>::quiet_NaN();
  }
  rep.histogram = make_histogram(rep.estimates);
}

}  // namespace

ExperimentReport run_table(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport rep;
  rep.config = config;
  rep.estimates.assign(config.m, 0.0);

  run_parallel(config.m, config.threads, [&](std::size_t r) {
    auto rng = RandomStream::child(config.seed, r);
    rep.estimates[r] = run_replicate(config, config.n, rng).a_hat;
  });

  fill_summary(rep);
  return rep;
}

ExperimentReport run_convergence_trace(const ExperimentConfig& config) {
  config.validate();
  const std::size_t n_max = config.n;
  ExperimentReport rep;
  rep.config = config;
  rep.trace.assign(n_max, TraceRow{});
  rep.estimates.assign(config.m, 0.0);

  // One worker per N; the deterministic scheme reuses a single factorization
  // for all replicates of that N.
  run_parallel(n_max, config.threads, [&](std::size_t idx) {
    const std::size_t n = idx + 1;
    std::vector<double> batch(config.m);
    std::optional<FbmSampler> sampler;
    std::optional<TimeGrid> fixed_grid;
    if (config.scheme == Scheme::Deterministic) {
      fixed_grid = TimeGrid::deterministic(n);
      if (config.noise == NoiseKind::Fbm)
        sampler.emplace(HurstModel(config.hurst, config.sigma),
                        fixed_grid->taus());
    }
    for (std::size_t r = 0; r < config.m; ++r) {
      auto rng = RandomStream::child(config.seed, n, r);
      if (fixed_grid) {
        GaussianPath path =
            sampler ? sampler->sample(rng) : zero_path(*fixed_grid);
        batch[r] =
            estimate(simulate(config.a_true, *fixed_grid, path)).a_hat;
      } else {
        batch[r] = run_replicate(config, n, rng).a_hat;
      }
    }
    rep.trace[idx] = TraceRow{n, mean(batch), sample_sd(batch)};
    if (n == n_max) rep.estimates = std::move(batch);
  });

  fill_summary(rep);
  return rep;
}

ExperimentReport run_rate_check(const ExperimentConfig& config) {
  config.validate();
  const auto& ns = config.rate_check_ns;
  if (std::set<std::size_t>(ns.begin(), ns.end()).size() < 3)
    throw DomainError("rate check needs at least 3 distinct N values");
  if (config.m < 2000)
    throw DomainError("rate check needs m >= 2000 per N");
  for (std::size_t n : ns)
    if (n == 0) throw DomainError("rate check N values must be >= 1");

  ExperimentReport rep;
  rep.config = config;
  rep.rate.reserve(ns.size());

  std::vector<double> an_sq(config.m), a_hats(config.m);
  for (std::size_t n : ns) {
    run_parallel(config.m, config.threads, [&](std::size_t r) {
      auto rng = RandomStream::child(config.seed, n, r);
      const auto res = run_replicate(config, n, rng);
      an_sq[r] = res.a_n * res.a_n;
      a_hats[r] = res.a_hat;
    });
    rep.rate.push_back(RateRow{n, mean(an_sq)});
  }
  rep.estimates = a_hats;  // replicates at the last N of the sweep

  std::vector<double> log_n(ns.size()), log_ms(ns.size());
  for (std::size_t k = 0; k < ns.size(); ++k) {
    log_n[k] = std::log(static_cast<double>(ns[k]));
    log_ms[k] = std::log(rep.rate[k].mean_sq_an);
  }
  rep.rate_fit = fit_line(log_n, log_ms);

  fill_summary(rep);
  return rep;
}

}  // namespace fracdrift
