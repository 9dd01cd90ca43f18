#include <doctest.h>

#include <cmath>
#include <vector>

#include "fracdrift/estimator.hpp"
#include "fracdrift/fbm.hpp"
#include "fracdrift/stats.hpp"

using namespace fracdrift;

namespace {

ObservationSeries series_on(TimeGrid grid, std::vector<double> y,
                            std::optional<double> a = std::nullopt) {
  return ObservationSeries{std::move(grid), std::move(y), a};
}

}  // namespace

TEST_CASE("estimate on hand-checked inputs") {
  auto g = TimeGrid::from_times(Scheme::Deterministic, {0.5, 1.0});
  auto d = estimate(series_on(g, {1.0, 2.0}));
  CHECK(d.a_hat == doctest::Approx(2.0).epsilon(1e-15));  // (0.5+2)/(0.25+1)
  CHECK(d.n == 2);

  auto g1 = TimeGrid::from_times(Scheme::Deterministic, {1.0});
  CHECK(estimate(series_on(g1, {3.7})).a_hat ==
        doctest::Approx(3.7).epsilon(1e-15));

  // injected path values [0.1, 0.3], zero drift:
  // y = [0.1, 0.2], a_hat = (0.5*0.1 + 1*0.2)/1.25 = 0.2
  auto d2 = estimate(series_on(g, {0.1, 0.3 - 0.1}, 0.0));
  CHECK(d2.a_hat == doctest::Approx(0.2).epsilon(1e-14));
  REQUIRE(d2.a_n.has_value());
  CHECK(*d2.a_n == doctest::Approx(0.2 * d2.d_n).epsilon(1e-13));
}

TEST_CASE("estimate error paths") {
  auto g = TimeGrid::from_times(Scheme::Deterministic, {0.5, 1.0});
  CHECK_THROWS_AS(estimate(series_on(g, {})), EmptySeries);
  CHECK_THROWS_AS(estimate(series_on(g, {1.0})), GridMismatch);
}

TEST_CASE("d_n closed form on the deterministic grid") {
  CHECK(d_n(TimeGrid::deterministic(2)) ==
        doctest::Approx(0.625).epsilon(1e-15));
  // (2n^2 + 3n + 1)/(6 n^2) = 1/3 + 1/(2n) + 1/(6 n^2)
  for (std::size_t n : {1u, 3u, 10u, 137u, 5000u}) {
    const double nd = static_cast<double>(n);
    const double closed = (2.0 * nd * nd + 3.0 * nd + 1.0) / (6.0 * nd * nd);
    CHECK(d_n(TimeGrid::deterministic(n)) ==
          doctest::Approx(closed).epsilon(1e-13));
    CHECK(closed ==
          doctest::Approx(1.0 / 3.0 + 1.0 / (2.0 * nd) + 1.0 / (6.0 * nd * nd))
              .epsilon(1e-13));
  }
}

TEST_CASE("d_n approaches 1/3 on random schemes") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    RandomStream rng(seed);
    CHECK(std::abs(d_n(TimeGrid::jittered(2000, rng)) - 1.0 / 3.0) < 0.01);
  }
  // empirical mean over 200 seeds at n = 2000 within 0.005 of 1/3
  for (auto scheme : {Scheme::Jittered, Scheme::Renewal}) {
    std::vector<double> ds(200);
    for (std::uint64_t k = 0; k < 200; ++k) {
      RandomStream rng(stream_seed(0xD0D0, k));
      ds[k] = d_n(scheme == Scheme::Jittered ? TimeGrid::jittered(2000, rng)
                                             : TimeGrid::renewal(2000, rng));
    }
    CHECK(std::abs(mean(ds) - 1.0 / 3.0) < 0.005);
  }
}

TEST_CASE("scale equivariance, drift shift, noiseless exactness") {
  RandomStream rng(31);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0, 60));
    auto grid = rep % 2 ? TimeGrid::jittered(n, rng)
                        : TimeGrid::renewal(n, rng);
    std::vector<double> y(n);
    for (auto& v : y) v = rng.normal();
    const double base = estimate(series_on(grid, y)).a_hat;

    const double c = rng.uniform(-4.0, 4.0);
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = c * y[i];
    const double got_scale = estimate(series_on(grid, scaled)).a_hat;
    CHECK(std::abs(got_scale - c * base) <=
          1e-13 * std::max(1.0, std::abs(c * base)));

    const double delta = rng.uniform(-5.0, 5.0);
    std::vector<double> shifted(n);
    for (std::size_t i = 0; i < n; ++i)
      shifted[i] = y[i] + delta * grid.taus()[i];
    const double got_shift = estimate(series_on(grid, shifted)).a_hat;
    CHECK(std::abs(got_shift - (base + delta)) <=
          1e-12 * std::max(1.0, std::abs(base + delta)));

    const double a = rng.uniform(-3.0, 3.0);
    std::vector<double> pure(n);
    for (std::size_t i = 0; i < n; ++i) pure[i] = a * grid.taus()[i];
    const double got_pure = estimate(series_on(grid, pure)).a_hat;
    CHECK(std::abs(got_pure - a) <= 1e-13 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("a_hat - a equals a_n / d_n") {
  RandomStream rng(32);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0, 80));
    auto grid = TimeGrid::jittered(n, rng);
    const double a = rng.uniform(-3.0, 3.0);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i)
      y[i] = a * grid.taus()[i] + 0.3 * rng.normal();
    const auto diag = estimate(series_on(grid, y, a));
    REQUIRE(diag.a_n.has_value());
    CHECK(diag.d_n > 0.0);
    CHECK(diag.d_n == d_n(grid));
    const double lhs = diag.a_hat - a;
    const double rhs = *diag.a_n / diag.d_n;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("noise functional is centered") {
  // mean of a_n over 10^4 replicates within 4 standard errors of zero
  const HurstModel model(0.75);
  const std::size_t m = 10000, n = 50;
  std::vector<double> a_ns(m);
  for (std::size_t r = 0; r < m; ++r) {
    auto rng = RandomStream::child(0xAB5EED, r);
    auto grid = TimeGrid::jittered(n, rng);
    auto path = sample_path(model, grid.taus(), rng);
    std::vector<double> y(n);
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = 2.0 * grid.taus()[i] + (path.values[i] - prev);
      prev = path.values[i];
    }
    a_ns[r] = *estimate(series_on(grid, y, 2.0)).a_n;
  }
  const double se = sample_sd(a_ns) / std::sqrt(static_cast<double>(m));
  CHECK(std::abs(mean(a_ns)) <= 4.0 * se);
}
