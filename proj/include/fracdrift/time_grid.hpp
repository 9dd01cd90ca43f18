#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fracdrift/errors.hpp"
#include "fracdrift/rng.hpp"

namespace fracdrift {

enum class Scheme { Deterministic, Jittered, Renewal };

const char* to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

// Observation times tau_1 < ... < tau_n with tau_0 = 0 implicit.
//
//   Deterministic  tau_i = i / n
//   Jittered       tau_i = i / n + nu_i,  nu_i iid Uniform[-1/(2n), 1/(2n)]
//   Renewal        tau_i = t_1 + ... + t_i,  t_j iid Exponential(rate n)
//
// Renewal times are kept even when they run past 1 so that a grid always
// carries exactly n observations. Renewal grids retain their increments for
// the quadratic-form diagnostics.
class TimeGrid {
 public:
  static TimeGrid deterministic(std::size_t n);
  static TimeGrid jittered(std::size_t n, RandomStream& rng);
  static TimeGrid renewal(std::size_t n, RandomStream& rng);

  // Injected constructors for exact-arithmetic tests and external data.
  static TimeGrid from_times(Scheme scheme, std::vector<double> taus);
  static TimeGrid from_increments(std::vector<double> increments);
  static TimeGrid from_jitter(std::size_t n, std::span<const double> nu);

  Scheme scheme() const { return scheme_; }
  std::size_t size() const { return taus_.size(); }
  std::span<const double> taus() const { return taus_; }
  static constexpr double tau0() { return 0.0; }

  // Renewal increments t_i; WrongScheme for the other schemes.
  std::span<const double> increments() const;

 private:
  TimeGrid(Scheme scheme, std::vector<double> taus, std::vector<double> incs)
      : scheme_(scheme), taus_(std::move(taus)), increments_(std::move(incs)) {}

  Scheme scheme_;
  std::vector<double> taus_;
  std::vector<double> increments_;  // renewal only
};

}  // namespace fracdrift
