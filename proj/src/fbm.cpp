#include "fracdrift/fbm.hpp"

#include <cmath>
#include <string>

namespace fracdrift {

namespace {

void check_grid(std::span<const double> times) {
  if (times.empty()) throw ZeroSize("time grid is empty");
  if (!(times[0] > 0.0))
    throw NonIncreasingGrid("time grid must start above 0, got " +
                            std::to_string(times[0]));
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1]))
      throw NonIncreasingGrid("time grid not strictly increasing at index " +
                              std::to_string(i));
  }
}

}  // namespace

HurstModel::HurstModel(double hurst_, double sigma_)
    : hurst(hurst_), sigma(sigma_) {
  if (!(hurst > 0.0) || !(hurst < 1.0))
    throw DomainError("Hurst exponent must lie in (0, 1), got " +
                      std::to_string(hurst));
  if (!(sigma > 0.0))
    throw DomainError("sigma must be positive, got " + std::to_string(sigma));
}

double covariance(const HurstModel& model, double t, double s) {
  if (t < 0.0 || s < 0.0) throw DomainError("covariance needs t, s >= 0");
  const double h2 = 2.0 * model.hurst;
  const double v = std::pow(t, h2) + std::pow(s, h2) - std::pow(std::abs(t - s), h2);
  return 0.5 * model.sigma * model.sigma * v;
}

Eigen::MatrixXd covariance_matrix(const HurstModel& model,
                                  std::span<const double> times) {
  check_grid(times);
  const auto n = static_cast<Eigen::Index>(times.size());
  const double h2 = 2.0 * model.hurst;
  const double half_var = 0.5 * model.sigma * model.sigma;

  Eigen::VectorXd powers(n);
  for (Eigen::Index i = 0; i < n; ++i)
    powers[i] = std::pow(times[static_cast<std::size_t>(i)], h2);

  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const double gap = times[static_cast<std::size_t>(i)] -
                         times[static_cast<std::size_t>(j)];
      const double r = half_var * (powers[i] + powers[j] - std::pow(gap, h2));
      cov(i, j) = r;
      cov(j, i) = r;
    }
  }
  return cov;
}

FbmSampler::FbmSampler(const HurstModel& model, std::span<const double> times)
    : times_(times.begin(), times.end()) {
  Eigen::MatrixXd cov = covariance_matrix(model, times);
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    // Near-duplicate times make the matrix numerically semidefinite; one
    // bounded diagonal jitter is the only rescue attempted.
    cov.diagonal().array() += 1e-12;
    llt.compute(cov);
    if (llt.info() != Eigen::Success)
      throw FactorizationFailure(
          "covariance not positive definite even after diagonal jitter");
  }
  lower_ = llt.matrixL();
}

GaussianPath FbmSampler::sample(RandomStream& rng) const {
  Eigen::VectorXd z(lower_.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
  Eigen::VectorXd v = lower_ * z;
  GaussianPath path;
  path.times = times_;
  path.values.assign(v.data(), v.data() + v.size());
  return path;
}

GaussianPath FbmSampler::from_normals(std::span<const double> z) const {
  if (z.size() != times_.size())
    throw GridMismatch("normal draws do not match the grid size");
  Eigen::Map<const Eigen::VectorXd> zv(z.data(),
                                       static_cast<Eigen::Index>(z.size()));
  Eigen::VectorXd v = lower_ * zv;
  GaussianPath path;
  path.times = times_;
  path.values.assign(v.data(), v.data() + v.size());
  return path;
}

GaussianPath sample_path(const HurstModel& model, std::span<const double> times,
                         RandomStream& rng) {
  return FbmSampler(model, times).sample(rng);
}

GaussianPath path_from_normals(const HurstModel& model,
                               std::span<const double> times,
                               std::span<const double> z) {
  return FbmSampler(model, times).from_normals(z);
}

}  // namespace fracdrift
