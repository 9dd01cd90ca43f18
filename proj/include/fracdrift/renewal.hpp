#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracdrift/errors.hpp"
#include "fracdrift/time_grid.hpp"

namespace fracdrift {

// Split of d_n = (1/n) sum tau_i^2 for a renewal grid into a quadratic form in
// the iid increments t_i (E t_i = 1/n, E t_i^2 = 2/n^2):
//
//   r_n  expectation part,  n(n+1)/n^3 + n(n-1)(n+1)/(3 n^3)  ->  1/3
//   t_n  centered diagonal,    (1/n) sum (n-i+1) (t_i^2 - E t_i^2)
//   q_n  centered linear part, sum (n t_i - 1)(n-i+1)(n+i-2)/n^3
//   u_n  centered cross part,  (1/n) sum_{i != j} (t_i - E)(t_j - E) (n - max(i,j) + 1)
//
// and r_n + t_n + q_n + u_n == d_n as an algebraic identity.
struct DecompositionReport {
  double r_n;
  double t_n;
  double q_n;
  double u_n;
  double d_n_reconstructed;
  std::size_t n;
};

DecompositionReport decompose(const TimeGrid& grid);

// Closed-form E[T_n^2] implied by the exponential moments (E t^4 = 24/n^4).
double t_n_variance(std::size_t n);

// Joint densities of the renewal times tau_i = t_1 + ... + t_i with
// Exponential(rate n) increments. Indices are 1-based.
enum class RenewalDensity {
  CumulativeAndIncrement,      // (tau_i, t_{i+1}),              i >= 1
  ConsecutivePair,             // (tau_i, tau_{i+1}),            i >= 1
  CumulativeAndTwoIncrements,  // (tau_{i-1}, t_i, t_{i+1}),     i >= 2
  ConsecutiveTriple,           // (tau_{i-1}, tau_i, tau_{i+1}), i >= 2
  SeparatedPairs,              // (tau_j, tau_{j+1}, tau_i, tau_{i+1}), i-j >= 2
};

std::size_t density_arity(RenewalDensity kind);

// Density value at `point`; 0 outside the support. Evaluated in log space so
// large indices do not overflow the n^{i+1} / Gamma(i) prefactor.
double joint_density(RenewalDensity kind, std::size_t n, std::size_t i,
                     std::optional<std::size_t> j,
                     std::span<const double> point);

// Closed forms of the two workhorse integrals.
//   beta_integral:  int_0^a (a-x)^b x^c dx = G(b+1)G(c+1)/G(b+c+2) a^{b+c+1}
//   gamma_integral: int_0^inf x^a e^{-bx} dx = b^{-a-1} G(a+1)
double beta_integral(double a, double b, double c);
double gamma_integral(double a, double b);

// Independent numeric routes used to verify the closed forms. Fractional
// endpoint exponents are absorbed by a power substitution before the adaptive
// Gauss-Kronrod pass.
double beta_integral_quadrature(double a, double b, double c);
double gamma_integral_quadrature(double a, double b);

// Total mass of a joint density by nested adaptive quadrature.
double density_mass(RenewalDensity kind, std::size_t n, std::size_t i,
                    std::optional<std::size_t> j, double tol = 1e-9);

// Verification suites behind the densities-check command.
struct IdentityCheck {
  std::string name;  // "beta" or "gamma"
  double p1, p2, p3;
  double closed_form;
  double quadrature;
  double rel_error;
  bool pass;
};

std::vector<IdentityCheck> check_integral_identities(std::size_t points,
                                                     std::uint64_t seed,
                                                     double tol = 1e-10);

struct NormalizationCheck {
  RenewalDensity kind;
  std::size_t n;
  std::size_t i;
  std::optional<std::size_t> j;
  double mass;
  double abs_error;
  bool pass;
};

std::vector<NormalizationCheck> check_density_normalizations(
    std::size_t max_index, std::size_t max_n, double tol = 1e-6);

const char* to_string(RenewalDensity kind);

}  // namespace fracdrift
