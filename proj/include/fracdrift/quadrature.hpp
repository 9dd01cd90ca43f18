#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <utility>

namespace fracdrift {

// Adaptive Gauss-Kronrod 15-point integration.
//
// The interval is rescaled to [0, 1] first: the underlying kernel keeps its
// error floor in normalized units, so very short ranges combined with tight
// tolerances would otherwise never satisfy the termination test and the
// recursion degenerates into a full tree.
template <class F>
double integrate(F&& f, double lo, double hi, double tol = 1e-12,
                 unsigned max_depth = 15) {
  if (!(hi > lo)) return 0.0;
  const double width = hi - lo;
  auto scaled = [&](double s) { return f(lo + width * s) * width; };
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      scaled, 0.0, 1.0, max_depth, tol, &error);
}

// Integral over [0, inf) through the map x = u / (1 - u). The integrand must
// decay fast enough that f(x)/(1-u)^2 stays integrable; exponential tails do.
template <class F>
double integrate_semi_infinite(F&& f, double tol = 1e-12,
                               unsigned max_depth = 15) {
  auto mapped = [g = std::forward<F>(f)](double u) {
    const double w = 1.0 - u;
    const double x = u / w;
    if (!std::isfinite(x)) return 0.0;
    const double v = g(x);
    return v == 0.0 ? 0.0 : v / (w * w);
  };
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      mapped, 0.0, 1.0, max_depth, tol, &error);
}

}  // namespace fracdrift
