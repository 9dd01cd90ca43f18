#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "fracdrift/errors.hpp"
#include "fracdrift/rng.hpp"

namespace fracdrift {

// Fractional Brownian motion with covariance
//   R(t, s) = sigma^2 / 2 * (|t|^{2H} + |s|^{2H} - |t - s|^{2H}).
// H = 1/2 is standard Brownian motion; H > 1/2 gives positively correlated
// increments (long memory).
struct HurstModel {
  double hurst;
  double sigma;

  explicit HurstModel(double hurst_, double sigma_ = 1.0);
};

double covariance(const HurstModel& model, double t, double s);

// Dense covariance matrix over a strictly increasing grid of positive times.
Eigen::MatrixXd covariance_matrix(const HurstModel& model,
                                  std::span<const double> times);

struct GaussianPath {
  std::vector<double> times;
  std::vector<double> values;
};

// Exact sampler on an arbitrary grid: factorizes the covariance once
// (dense Cholesky, O(n^3)) and maps standard normals through the factor.
// Random grids rule out circulant embedding, so exactness costs the cube.
class FbmSampler {
 public:
  FbmSampler(const HurstModel& model, std::span<const double> times);

  GaussianPath sample(RandomStream& rng) const;

  // Deterministic variant for tests: values = L * z.
  GaussianPath from_normals(std::span<const double> z) const;

  const Eigen::MatrixXd& cholesky_factor() const { return lower_; }

 private:
  std::vector<double> times_;
  Eigen::MatrixXd lower_;
};

GaussianPath sample_path(const HurstModel& model, std::span<const double> times,
                         RandomStream& rng);

GaussianPath path_from_normals(const HurstModel& model,
                               std::span<const double> times,
                               std::span<const double> z);

}  // namespace fracdrift
