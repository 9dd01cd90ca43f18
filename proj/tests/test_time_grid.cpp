#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fracdrift/stats.hpp"
#include "fracdrift/time_grid.hpp"

using namespace fracdrift;

TEST_CASE("deterministic grid") {
  auto g4 = TimeGrid::deterministic(4);
  const std::vector<double> want{0.25, 0.5, 0.75, 1.0};
  CHECK(std::equal(g4.taus().begin(), g4.taus().end(), want.begin()));
  CHECK(TimeGrid::deterministic(1).taus()[0] == 1.0);
  auto g2 = TimeGrid::deterministic(2);
  CHECK(g2.taus()[0] == 0.5);
  CHECK(g2.taus()[1] == 1.0);
  CHECK(g2.tau0() == 0.0);
  CHECK_THROWS_AS(TimeGrid::deterministic(0), ZeroSize);
}

TEST_CASE("jittered grid with injected jitter") {
  // zero jitter reduces to the deterministic grid
  const std::vector<double> zeros(4, 0.0);
  auto g = TimeGrid::from_jitter(4, zeros);
  auto d = TimeGrid::deterministic(4);
  CHECK(std::equal(g.taus().begin(), g.taus().end(), d.taus().begin()));

  const std::vector<double> nu{0.125, -0.125};
  auto g2 = TimeGrid::from_jitter(2, nu);
  CHECK(g2.taus()[0] == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(g2.taus()[1] == doctest::Approx(0.875).epsilon(1e-15));

  const std::vector<double> too_big{0.3, 0.0};
  CHECK_THROWS_AS(TimeGrid::from_jitter(2, too_big), DegenerateGrid);
  // extreme jitter pair that ties two consecutive times
  const std::vector<double> tie{0.125, -0.125, 0.0, 0.0};
  CHECK_THROWS_AS(TimeGrid::from_jitter(4, tie), NonIncreasingGrid);
}

TEST_CASE("jittered grid stays inside the support band") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    RandomStream rng(seed);
    const std::size_t n = 1000;
    auto g = TimeGrid::jittered(n, rng);
    const auto taus = g.taus();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(taus[i] - static_cast<double>(i + 1) /
                                                     static_cast<double>(n)));
      if (i) CHECK(taus[i] > taus[i - 1]);
    }
    CHECK(worst <= 0.5 / static_cast<double>(n));
  }
}

TEST_CASE("renewal grid from injected increments") {
  auto g = TimeGrid::from_increments({0.2, 0.3, 0.1});
  CHECK(g.scheme() == Scheme::Renewal);
  CHECK(g.taus()[0] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(g.taus()[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.taus()[2] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(g.increments()[1] == 0.3);
  CHECK_THROWS_AS(TimeGrid::from_increments({0.2, 0.0}), DegenerateGrid);
  CHECK_THROWS_AS(TimeGrid::from_increments({}), ZeroSize);
  CHECK_THROWS_AS(TimeGrid::deterministic(3).increments(), WrongScheme);
}

TEST_CASE("renewal increments have the right first moments") {
  const std::size_t n = 1000;
  for (std::uint64_t seed : {10u, 20u, 30u, 40u}) {
    RandomStream rng(seed);
    auto g = TimeGrid::renewal(n, rng);
    const auto incs = g.increments();
    const double m = mean(incs);
    const double nd = static_cast<double>(n);
    // mean of n Exp(n) draws: SE = 1/(n sqrt(n))
    CHECK(std::abs(m - 1.0 / nd) <= 4.0 / (nd * std::sqrt(nd)));
    // tau_n is Gamma(n, n): mean 1, sd 1/sqrt(n)
    CHECK(std::abs(g.taus().back() - 1.0) <= 4.0 / std::sqrt(nd));
  }
}

namespace {

// Kolmogorov-Smirnov statistic against Exponential(rate).
double ks_stat_exponential(std::span<const double> samples, double rate) {
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double cdf = 1.0 - std::exp(-rate * x[i]);
    d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
  }
  return d;
}

}  // namespace

TEST_CASE("renewal increments pass a KS test against Exp(n)") {
  const std::size_t n = 1000;
  const double critical = 1.6276 / std::sqrt(static_cast<double>(n));  // alpha = 0.01
  int rejections = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomStream rng(stream_seed(0xC0FFEE, seed));
    auto g = TimeGrid::renewal(n, rng);
    if (ks_stat_exponential(g.increments(), static_cast<double>(n)) > critical)
      ++rejections;
  }
  CHECK(rejections <= 2);
}

TEST_CASE("from_times validation") {
  CHECK_THROWS_AS(TimeGrid::from_times(Scheme::Deterministic, {0.5, 0.5}),
                  NonIncreasingGrid);
  CHECK_THROWS_AS(TimeGrid::from_times(Scheme::Deterministic, {-0.5, 0.5}),
                  NonIncreasingGrid);
  CHECK_THROWS_AS(TimeGrid::from_times(Scheme::Deterministic, {}), ZeroSize);
  // jitter band enforced when claiming the jittered scheme
  CHECK_THROWS_AS(TimeGrid::from_times(Scheme::Jittered, {0.9, 1.0}),
                  DegenerateGrid);
  auto ok = TimeGrid::from_times(Scheme::Jittered, {0.45, 1.05});
  CHECK(ok.size() == 2);
  auto ren = TimeGrid::from_times(Scheme::Renewal, {0.4, 1.1});
  CHECK(ren.increments()[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(ren.increments()[1] == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("scheme names round-trip") {
  for (auto s : {Scheme::Deterministic, Scheme::Jittered, Scheme::Renewal})
    CHECK(scheme_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(scheme_from_string("uniform"), DomainError);
}
