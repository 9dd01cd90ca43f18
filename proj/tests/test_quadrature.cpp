#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracdrift/quadrature.hpp"

using namespace fracdrift;

TEST_CASE("finite intervals") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0,
                  std::numbers::pi) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
  // short range, tight tolerance: must not blow up
  CHECK(integrate([](double x) { return x; }, 0.0, 1e-6, 1e-12) ==
        doctest::Approx(5e-13).epsilon(1e-11));
}

TEST_CASE("semi-infinite intervals") {
  CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_semi_infinite(
            [](double x) { return x * x * std::exp(-3.0 * x); }) ==
        doctest::Approx(2.0 / 27.0).epsilon(1e-12));
  // Gaussian tail: int_0^inf e^{-x^2/2} = sqrt(pi/2)
  CHECK(integrate_semi_infinite(
            [](double x) { return std::exp(-0.5 * x * x); }) ==
        doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-12));
}
