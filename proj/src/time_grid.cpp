#include "fracdrift/time_grid.hpp"

#include <cmath>

namespace fracdrift {

namespace {

void check_strictly_increasing(const std::vector<double>& taus) {
  if (taus.empty()) throw ZeroSize("grid size must be at least 1");
  if (!(taus[0] > 0.0))
    throw NonIncreasingGrid("tau_1 must be positive, got " +
                            std::to_string(taus[0]));
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (!(taus[i] > taus[i - 1]))
      throw NonIncreasingGrid("taus not strictly increasing at index " +
                              std::to_string(i + 1));
  }
}

std::vector<double> diff_from_zero(const std::vector<double>& taus) {
  std::vector<double> incs(taus.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    incs[i] = taus[i] - prev;
    prev = taus[i];
  }
  return incs;
}

}  // namespace

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Deterministic: return "deterministic";
    case Scheme::Jittered: return "jittered";
    case Scheme::Renewal: return "renewal";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "deterministic") return Scheme::Deterministic;
  if (name == "jittered") return Scheme::Jittered;
  if (name == "renewal") return Scheme::Renewal;
  throw DomainError("unknown sampling scheme '" + name + "'");
}

TimeGrid TimeGrid::deterministic(std::size_t n) {
  if (n == 0) throw ZeroSize("grid size must be at least 1");
  std::vector<double> taus(n);
  for (std::size_t i = 0; i < n; ++i)
    taus[i] = static_cast<double>(i + 1) / static_cast<double>(n);
  return TimeGrid(Scheme::Deterministic, std::move(taus), {});
}

TimeGrid TimeGrid::jittered(std::size_t n, RandomStream& rng) {
  if (n == 0) throw ZeroSize("grid size must be at least 1");
  const double half = 0.5 / static_cast<double>(n);
  std::vector<double> taus(n);
  for (std::size_t i = 0; i < n; ++i)
    taus[i] = static_cast<double>(i + 1) / static_cast<double>(n) +
              rng.uniform(-half, half);
  // Consecutive ties have measure zero; one redraw of the offending jitter,
  // then hard error.
  for (std::size_t i = 1; i < n; ++i) {
    if (taus[i] <= taus[i - 1]) {
      taus[i] = static_cast<double>(i + 1) / static_cast<double>(n) +
                rng.uniform(-half, half);
      if (taus[i] <= taus[i - 1])
        throw DegenerateGrid("jittered grid tie persisted at index " +
                             std::to_string(i + 1));
    }
  }
  return TimeGrid(Scheme::Jittered, std::move(taus), {});
}

TimeGrid TimeGrid::renewal(std::size_t n, RandomStream& rng) {
  if (n == 0) throw ZeroSize("grid size must be at least 1");
  const double rate = static_cast<double>(n);
  std::vector<double> incs(n), taus(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    incs[i] = rng.exponential(rate);
    acc += incs[i];
    taus[i] = acc;
  }
  return TimeGrid(Scheme::Renewal, std::move(taus), std::move(incs));
}

TimeGrid TimeGrid::from_times(Scheme scheme, std::vector<double> taus) {
  check_strictly_increasing(taus);
  if (scheme == Scheme::Jittered) {
    const auto n = static_cast<double>(taus.size());
    const double bound = 0.5 / n * (1.0 + 1e-12);
    for (std::size_t i = 0; i < taus.size(); ++i) {
      if (std::abs(taus[i] - static_cast<double>(i + 1) / n) > bound)
        throw DegenerateGrid("jitter bound exceeded at index " +
                             std::to_string(i + 1));
    }
  }
  std::vector<double> incs;
  if (scheme == Scheme::Renewal) incs = diff_from_zero(taus);
  return TimeGrid(scheme, std::move(taus), std::move(incs));
}

TimeGrid TimeGrid::from_increments(std::vector<double> increments) {
  if (increments.empty()) throw ZeroSize("grid size must be at least 1");
  for (std::size_t i = 0; i < increments.size(); ++i) {
    if (!(increments[i] > 0.0))
      throw DegenerateGrid("renewal increment not positive at index " +
                           std::to_string(i + 1));
  }
  std::vector<double> taus(increments.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < increments.size(); ++i) {
    acc += increments[i];
    taus[i] = acc;
  }
  return TimeGrid(Scheme::Renewal, std::move(taus), std::move(increments));
}

TimeGrid TimeGrid::from_jitter(std::size_t n, std::span<const double> nu) {
  if (n == 0) throw ZeroSize("grid size must be at least 1");
  if (nu.size() != n) throw GridMismatch("jitter vector size differs from n");
  const double half = 0.5 / static_cast<double>(n);
  std::vector<double> taus(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(nu[i]) > half * (1.0 + 1e-12))
      throw DegenerateGrid("jitter out of [-1/(2n), 1/(2n)] at index " +
                           std::to_string(i + 1));
    taus[i] = static_cast<double>(i + 1) / static_cast<double>(n) + nu[i];
  }
  check_strictly_increasing(taus);
  return TimeGrid(Scheme::Jittered, std::move(taus), {});
}

std::span<const double> TimeGrid::increments() const {
  if (scheme_ != Scheme::Renewal)
    throw WrongScheme("increments are tracked for renewal grids only");
  return increments_;
}

}  // namespace fracdrift
