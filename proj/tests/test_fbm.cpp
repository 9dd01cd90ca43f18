#include <doctest.h>

#include <cmath>
#include <vector>

#include "fracdrift/fbm.hpp"
#include "fracdrift/stats.hpp"

using namespace fracdrift;

TEST_CASE("covariance closed form") {
  const HurstModel h75(0.75);
  CHECK(covariance(h75, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  // H = 1/2 reduces to min(s, t)
  const HurstModel bm(0.5);
  CHECK(covariance(bm, 2.0, 3.0) == doctest::Approx(2.0).epsilon(1e-15));
  // (1 + 2^1.5 - 1)/2 = sqrt(2)
  CHECK(covariance(h75, 1.0, 2.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("covariance symmetry and diagonal") {
  RandomStream rng(11);
  for (int k = 0; k < 200; ++k) {
    const HurstModel m(rng.uniform(0.05, 0.95), rng.uniform(0.1, 3.0));
    const double t = rng.uniform(0.0, 2.0);
    const double s = rng.uniform(0.0, 2.0);
    CHECK(covariance(m, t, s) == covariance(m, s, t));
    CHECK(covariance(m, t, t) ==
          doctest::Approx(m.sigma * m.sigma * std::pow(t, 2.0 * m.hurst))
              .epsilon(1e-14));
  }
}

TEST_CASE("model and argument validation") {
  CHECK_THROWS_AS(HurstModel(0.0), DomainError);
  CHECK_THROWS_AS(HurstModel(1.0), DomainError);
  CHECK_THROWS_AS(HurstModel(0.7, 0.0), DomainError);
  CHECK_THROWS_AS(HurstModel(0.7, -1.0), DomainError);
  const HurstModel m(0.75);
  CHECK_THROWS_AS(covariance(m, -0.1, 1.0), DomainError);
  const std::vector<double> bad1{1.0, 1.0};
  const std::vector<double> bad2{2.0, 1.0};
  const std::vector<double> bad3{0.0, 1.0};
  CHECK_THROWS_AS(covariance_matrix(m, bad1), NonIncreasingGrid);
  CHECK_THROWS_AS(covariance_matrix(m, bad2), NonIncreasingGrid);
  CHECK_THROWS_AS(covariance_matrix(m, bad3), NonIncreasingGrid);
  CHECK_THROWS_AS(covariance_matrix(m, std::vector<double>{}), ZeroSize);
}

TEST_CASE("covariance matrix entries") {
  const std::vector<double> t12{1.0, 2.0};
  auto bm = covariance_matrix(HurstModel(0.5), t12);
  CHECK(bm(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bm(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bm(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bm(1, 1) == doctest::Approx(2.0).epsilon(1e-15));

  const std::vector<double> single{0.5};
  auto one = covariance_matrix(HurstModel(0.3, 2.0), single);
  CHECK(one.rows() == 1);
  CHECK(one(0, 0) == doctest::Approx(4.0 * std::pow(0.5, 0.6)).epsilon(1e-14));

  auto m75 = covariance_matrix(HurstModel(0.75), t12);
  CHECK(m75(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m75(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(m75(1, 1) == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-14));
}

TEST_CASE("path from injected normals") {
  const HurstModel bm(0.5);
  const std::vector<double> t1{1.0};
  const std::vector<double> z0{0.0};
  auto p = path_from_normals(bm, t1, z0);
  CHECK(p.values[0] == 0.0);

  // Cholesky of [[1,1],[1,2]] is [[1,0],[1,1]] by hand
  const std::vector<double> t12{1.0, 2.0};
  const std::vector<double> z11{1.0, 1.0};
  auto q = path_from_normals(bm, t12, z11);
  CHECK(q.values[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q.values[1] == doctest::Approx(2.0).epsilon(1e-15));

  CHECK_THROWS_AS(path_from_normals(bm, t12, z0), GridMismatch);
}

namespace {

std::vector<double> random_grid(std::size_t n, RandomStream& rng) {
  std::vector<double> t(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += rng.uniform(1e-4, 2.0 / static_cast<double>(n));
    t[i] = acc;
  }
  return t;
}

}  // namespace

TEST_CASE("factor reconstructs the covariance") {
  RandomStream rng(42);
  for (std::size_t n : {8u, 64u, 257u, 512u}) {
    const auto times = random_grid(n, rng);
    const HurstModel m(0.75);
    const auto cov = covariance_matrix(m, times);
    FbmSampler sampler(m, times);
    const auto& L = sampler.cholesky_factor();
    const double resid = (L * L.transpose() - cov).cwiseAbs().maxCoeff();
    const double scale = cov.cwiseAbs().maxCoeff();
    CHECK(resid / scale < 1e-10);
  }
}

TEST_CASE("sampled increments match the second moment") {
  const HurstModel m(0.75);
  const std::vector<double> times{0.3, 0.7};
  FbmSampler sampler(m, times);
  RandomStream rng(7);

  const std::size_t paths = 100000;
  std::vector<double> inc_sq(paths), v0(paths), v1(paths);
  for (std::size_t k = 0; k < paths; ++k) {
    auto p = sampler.sample(rng);
    const double d = p.values[1] - p.values[0];
    inc_sq[k] = d * d;
    v0[k] = p.values[0];
    v1[k] = p.values[1];
  }
  // E[(B_t - B_s)^2] = |t - s|^{2H}
  const double target = std::pow(0.4, 1.5);
  const double se_var = target * std::sqrt(2.0 / static_cast<double>(paths));
  CHECK(std::abs(mean(inc_sq) - target) < 4.0 * se_var);

  // sample covariance against the closed form, three standard errors
  const double m0 = mean(v0);
  const double m1 = mean(v1);
  std::vector<double> prod(paths);
  for (std::size_t k = 0; k < paths; ++k) prod[k] = (v0[k] - m0) * (v1[k] - m1);
  const double c01 = covariance(m, 0.3, 0.7);
  const double c00 = covariance(m, 0.3, 0.3);
  const double c11 = covariance(m, 0.7, 0.7);
  const double se_cov =
      std::sqrt((c00 * c11 + c01 * c01) / static_cast<double>(paths));
  CHECK(std::abs(mean(prod) - c01) < 3.0 * se_cov);
}

TEST_CASE("Brownian increments over disjoint intervals are uncorrelated") {
  const HurstModel bm(0.5);
  const std::vector<double> times{0.25, 0.5, 0.75, 1.0};
  FbmSampler sampler(bm, times);
  RandomStream rng(99);
  const std::size_t paths = 20000;
  std::vector<double> a(paths), b(paths);
  for (std::size_t k = 0; k < paths; ++k) {
    auto p = sampler.sample(rng);
    a[k] = p.values[1] - p.values[0];
    b[k] = p.values[3] - p.values[2];
  }
  const double ma = mean(a), mb = mean(b);
  double num = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t k = 0; k < paths; ++k) {
    num += (a[k] - ma) * (b[k] - mb);
    va += (a[k] - ma) * (a[k] - ma);
    vb += (b[k] - mb) * (b[k] - mb);
  }
  const double corr = num / std::sqrt(va * vb);
  CHECK(std::abs(corr) < 4.0 / std::sqrt(static_cast<double>(paths)));
}

TEST_CASE("near-duplicate times survive via diagonal jitter") {
  const HurstModel m(0.75);
  const std::vector<double> times{1.0, 1.0 + 1e-13};
  RandomStream rng(5);
  auto p = sample_path(m, times, rng);
  CHECK(std::isfinite(p.values[0]));
  CHECK(std::isfinite(p.values[1]));
  CHECK(std::abs(p.values[1] - p.values[0]) < 1e-3);
}
