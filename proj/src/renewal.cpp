#include "fracdrift/renewal.hpp"

#include <cmath>

#include "fracdrift/estimator.hpp"
#include "fracdrift/quadrature.hpp"
#include "fracdrift/stats.hpp"

namespace fracdrift {

DecompositionReport decompose(const TimeGrid& grid) {
  const auto incs = grid.increments();  // WrongScheme unless renewal
  const std::size_t n = incs.size();
  const double nd = static_cast<double>(n);
  const double n3 = nd * nd * nd;
  const double mean_inc = 1.0 / nd;
  const double mean_sq = 2.0 / (nd * nd);

  DecompositionReport rep{};
  rep.n = n;
  rep.r_n = nd * (nd + 1.0) / n3 + nd * (nd - 1.0) * (nd + 1.0) / (3.0 * n3);

  std::vector<double> terms(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double weight = (nd - static_cast<double>(k + 1) + 1.0) / nd;
    terms[k] = weight * (incs[k] * incs[k] - mean_sq);
  }
  rep.t_n = pairwise_sum(terms);

  for (std::size_t k = 0; k < n; ++k) {
    const double i = static_cast<double>(k + 1);
    terms[k] = (nd * incs[k] - 1.0) * (nd - i + 1.0) * (nd + i - 2.0) / n3;
  }
  rep.q_n = pairwise_sum(terms);

  // u_n rearranged with prefix sums of the centered increments; equal to the
  // symmetric double sum because the weight depends only on max(i, j).
  double prefix = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double j = static_cast<double>(k + 1);
    const double c = incs[k] - mean_inc;
    terms[k] = (2.0 / nd) * (nd - j + 1.0) * c * prefix;
    prefix += c;
  }
  rep.u_n = pairwise_sum(terms);

  rep.d_n_reconstructed = rep.r_n + rep.t_n + rep.q_n + rep.u_n;
  return rep;
}

double t_n_variance(std::size_t n) {
  const double nd = static_cast<double>(n);
  // Var(t^2) = E t^4 - (E t^2)^2 = 24/n^4 - 4/n^4 = 20/n^4, summed against
  // the squared weights ((n-i+1)/n)^2.
  return (20.0 / 6.0) * nd * (nd + 1.0) * (2.0 * nd + 1.0) / std::pow(nd, 6);
}

std::size_t density_arity(RenewalDensity kind) {
  switch (kind) {
    case RenewalDensity::CumulativeAndIncrement:
    case RenewalDensity::ConsecutivePair:
      return 2;
    case RenewalDensity::CumulativeAndTwoIncrements:
    case RenewalDensity::ConsecutiveTriple:
      return 3;
    case RenewalDensity::SeparatedPairs:
      return 4;
  }
  return 0;
}

const char* to_string(RenewalDensity kind) {
  switch (kind) {
    case RenewalDensity::CumulativeAndIncrement: return "cumulative_and_increment";
    case RenewalDensity::ConsecutivePair: return "consecutive_pair";
    case RenewalDensity::CumulativeAndTwoIncrements: return "cumulative_and_two_increments";
    case RenewalDensity::ConsecutiveTriple: return "consecutive_triple";
    case RenewalDensity::SeparatedPairs: return "separated_pairs";
  }
  return "?";
}

namespace {

// x^p contribution in log space; 0^0 counts as 1 and 0^p (p > 0) kills the
// density. Returns false when the whole density is zero.
bool add_power_term(double base, double power, double& log_acc) {
  if (power == 0.0) return true;
  if (base == 0.0) return false;
  log_acc += power * std::log(base);
  return true;
}

void check_point_arity(RenewalDensity kind, std::span<const double> point) {
  if (point.size() != density_arity(kind))
    throw InvalidIndices("density point has wrong arity");
}

}  // namespace

double joint_density(RenewalDensity kind, std::size_t n, std::size_t i,
                     std::optional<std::size_t> j,
                     std::span<const double> point) {
  if (n == 0) throw InvalidIndices("rate parameter n must be >= 1");
  check_point_arity(kind, point);
  const double nd = static_cast<double>(n);
  const double id = static_cast<double>(i);

  for (double coord : point)
    if (coord < 0.0) return 0.0;

  switch (kind) {
    case RenewalDensity::CumulativeAndIncrement: {
      if (i < 1) throw InvalidIndices("needs i >= 1");
      const double a = point[0], b = point[1];
      double lg = (id + 1.0) * std::log(nd) - std::lgamma(id) - nd * (a + b);
      if (!add_power_term(a, id - 1.0, lg)) return 0.0;
      return std::exp(lg);
    }
    case RenewalDensity::ConsecutivePair: {
      if (i < 1) throw InvalidIndices("needs i >= 1");
      const double a = point[0], b = point[1];
      if (a > b) return 0.0;
      double lg = (id + 1.0) * std::log(nd) - std::lgamma(id) - nd * b;
      if (!add_power_term(a, id - 1.0, lg)) return 0.0;
      return std::exp(lg);
    }
    case RenewalDensity::CumulativeAndTwoIncrements: {
      if (i < 2) throw InvalidIndices("needs i >= 2");
      const double a = point[0], b = point[1], c = point[2];
      double lg =
          (id + 1.0) * std::log(nd) - std::lgamma(id - 1.0) - nd * (a + b + c);
      if (!add_power_term(a, id - 2.0, lg)) return 0.0;
      return std::exp(lg);
    }
    case RenewalDensity::ConsecutiveTriple: {
      if (i < 2) throw InvalidIndices("needs i >= 2");
      const double a = point[0], b = point[1], c = point[2];
      if (a > b || b > c) return 0.0;
      double lg = (id + 1.0) * std::log(nd) - std::lgamma(id - 1.0) - nd * c;
      if (!add_power_term(a, id - 2.0, lg)) return 0.0;
      return std::exp(lg);
    }
    case RenewalDensity::SeparatedPairs: {
      if (!j) throw InvalidIndices("this density needs the second index j");
      if (*j < 1 || i < *j + 2)
        throw InvalidIndices("needs j >= 1 and i - j >= 2");
      const double jd = static_cast<double>(*j);
      const double a = point[0], b = point[1], c = point[2], d = point[3];
      if (a > b || b > c || c > d) return 0.0;
      double lg = (id + 1.0) * std::log(nd) - std::lgamma(jd) -
                  std::lgamma(id - jd - 1.0) - nd * d;
      if (!add_power_term(a, jd - 1.0, lg)) return 0.0;
      if (!add_power_term(c - b, id - jd - 2.0, lg)) return 0.0;
      return std::exp(lg);
    }
  }
  throw InvalidIndices("unknown density kind");
}

double beta_integral(double a, double b, double c) {
  if (!(a > 0.0)) throw DomainError("beta_integral needs a > 0");
  if (!(b > -1.0) || !(c > -1.0))
    throw DomainError("beta_integral needs b > -1 and c > -1");
  const double lg =
      std::lgamma(b + 1.0) + std::lgamma(c + 1.0) - std::lgamma(b + c + 2.0);
  return std::exp(lg + (b + c + 1.0) * std::log(a));
}

double gamma_integral(double a, double b) {
  if (!(a > -1.0)) throw DomainError("gamma_integral needs a > -1");
  if (!(b > 0.0)) throw DomainError("gamma_integral needs b > 0");
  return std::exp(std::lgamma(a + 1.0) - (a + 1.0) * std::log(b));
}

namespace {

// int_0^{hi} x^p g(x) dx with g smooth. For p < 1 the substitution
// x = u^{1/(1+p)} flattens the x^p factor exactly, leaving an integrand the
// adaptive pass resolves at full precision.
template <class G>
double power_weighted_integral(double p, double hi, G&& g) {
  if (p < 1.0) {
    const double alpha = 1.0 / (1.0 + p);
    const double upper = std::pow(hi, 1.0 + p);
    return integrate(
        [&](double u) { return alpha * g(std::pow(u, alpha)); }, 0.0, upper);
  }
  return integrate([&](double x) { return std::pow(x, p) * g(x); }, 0.0, hi);
}

}  // namespace

double beta_integral_quadrature(double a, double b, double c) {
  if (!(a > 0.0) || !(b > -1.0) || !(c > -1.0))
    throw DomainError("beta_integral_quadrature preconditions violated");
  // Split at a/2; each half carries at most one rough endpoint.
  const double low =
      power_weighted_integral(c, a / 2.0, [&](double x) { return std::pow(a - x, b); });
  const double high =
      power_weighted_integral(b, a / 2.0, [&](double x) { return std::pow(a - x, c); });
  return low + high;
}

double gamma_integral_quadrature(double a, double b) {
  if (!(a > -1.0) || !(b > 0.0))
    throw DomainError("gamma_integral_quadrature preconditions violated");
  const double low =
      power_weighted_integral(a, 1.0, [&](double x) { return std::exp(-b * x); });
  // Tail mapped onto [0, 1) via x = 1 + v/(1-v).
  const double high = integrate(
      [&](double v) {
        const double w = 1.0 - v;
        const double x = 1.0 + v / w;
        if (!std::isfinite(x)) return 0.0;
        const double val = std::pow(x, a) * std::exp(-b * x);
        return val == 0.0 ? 0.0 : val / (w * w);
      },
      0.0, 1.0);
  return low + high;
}

namespace {

constexpr double kNestedTolShrink = 0.1;

double mass_2d_octant(RenewalDensity kind, std::size_t n, std::size_t i,
                      double tol) {
  return integrate_semi_infinite(
      [&](double a) {
        return integrate_semi_infinite(
            [&](double b) {
              const double pt[2] = {a, b};
              return joint_density(kind, n, i, std::nullopt, pt);
            },
            tol * kNestedTolShrink);
      },
      tol);
}

double mass_2d_ordered(RenewalDensity kind, std::size_t n, std::size_t i,
                       double tol) {
  return integrate_semi_infinite(
      [&](double b) {
        return integrate(
            [&](double a) {
              const double pt[2] = {a, b};
              return joint_density(kind, n, i, std::nullopt, pt);
            },
            0.0, b, tol * kNestedTolShrink);
      },
      tol);
}

double mass_3d_octant(RenewalDensity kind, std::size_t n, std::size_t i,
                      double tol) {
  return integrate_semi_infinite(
      [&](double a) {
        return integrate_semi_infinite(
            [&](double b) {
              return integrate_semi_infinite(
                  [&](double c) {
                    const double pt[3] = {a, b, c};
                    return joint_density(kind, n, i, std::nullopt, pt);
                  },
                  tol * kNestedTolShrink * kNestedTolShrink);
            },
            tol * kNestedTolShrink);
      },
      tol);
}

double mass_3d_ordered(RenewalDensity kind, std::size_t n, std::size_t i,
                       double tol) {
  return integrate_semi_infinite(
      [&](double c) {
        return integrate(
            [&](double b) {
              return integrate(
                  [&](double a) {
                    const double pt[3] = {a, b, c};
                    return joint_density(kind, n, i, std::nullopt, pt);
                  },
                  0.0, b, tol * kNestedTolShrink * kNestedTolShrink);
            },
            0.0, c, tol * kNestedTolShrink);
      },
      tol);
}

double mass_4d_ordered(RenewalDensity kind, std::size_t n, std::size_t i,
                       std::size_t j, double tol) {
  const double t2 = tol * kNestedTolShrink;
  const double t3 = t2 * kNestedTolShrink;
  const double t4 = t3 * kNestedTolShrink;
  return integrate_semi_infinite(
      [&](double d) {
        return integrate(
            [&](double c) {
              return integrate(
                  [&](double b) {
                    return integrate(
                        [&](double a) {
                          const double pt[4] = {a, b, c, d};
                          return joint_density(kind, n, i, j, pt);
                        },
                        0.0, b, t4);
                  },
                  0.0, c, t3);
            },
            0.0, d, t2);
      },
      tol);
}

}  // namespace

double density_mass(RenewalDensity kind, std::size_t n, std::size_t i,
                    std::optional<std::size_t> j, double tol) {
  switch (kind) {
    case RenewalDensity::CumulativeAndIncrement:
      return mass_2d_octant(kind, n, i, tol);
    case RenewalDensity::ConsecutivePair:
      return mass_2d_ordered(kind, n, i, tol);
    case RenewalDensity::CumulativeAndTwoIncrements:
      return mass_3d_octant(kind, n, i, tol);
    case RenewalDensity::ConsecutiveTriple:
      return mass_3d_ordered(kind, n, i, tol);
    case RenewalDensity::SeparatedPairs:
      if (!j) throw InvalidIndices("this density needs the second index j");
      return mass_4d_ordered(kind, n, i, *j, tol);
  }
  throw InvalidIndices("unknown density kind");
}

std::vector<IdentityCheck> check_integral_identities(std::size_t points,
                                                     std::uint64_t seed,
                                                     double tol) {
  std::vector<IdentityCheck> rows;
  rows.reserve(2 * points);
  RandomStream rng(seed);
  for (std::size_t k = 0; k < points; ++k) {
    const double a = rng.uniform(0.1, 4.0);
    const double b = rng.uniform(-0.95, 3.0);
    const double c = rng.uniform(-0.95, 3.0);
    const double closed = beta_integral(a, b, c);
    const double quad = beta_integral_quadrature(a, b, c);
    const double rel = std::abs(closed - quad) / std::abs(closed);
    rows.push_back({"beta", a, b, c, closed, quad, rel, rel < tol});
  }
  for (std::size_t k = 0; k < points; ++k) {
    const double a = rng.uniform(-0.95, 3.0);
    const double b = rng.uniform(0.1, 5.0);
    const double closed = gamma_integral(a, b);
    const double quad = gamma_integral_quadrature(a, b);
    const double rel = std::abs(closed - quad) / std::abs(closed);
    rows.push_back({"gamma", a, b, 0.0, closed, quad, rel, rel < tol});
  }
  return rows;
}

std::vector<NormalizationCheck> check_density_normalizations(
    std::size_t max_index, std::size_t max_n, double tol) {
  std::vector<NormalizationCheck> rows;
  const double quad_tol = tol * 1e-3;
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (std::size_t i = 1; i <= max_index; ++i) {
      for (auto kind : {RenewalDensity::CumulativeAndIncrement,
                        RenewalDensity::ConsecutivePair}) {
        const double mass = density_mass(kind, n, i, std::nullopt, quad_tol);
        rows.push_back({kind, n, i, std::nullopt, mass, std::abs(mass - 1.0),
                        std::abs(mass - 1.0) < tol});
      }
      if (i >= 2) {
        for (auto kind : {RenewalDensity::CumulativeAndTwoIncrements,
                          RenewalDensity::ConsecutiveTriple}) {
          const double mass = density_mass(kind, n, i, std::nullopt, quad_tol);
          rows.push_back({kind, n, i, std::nullopt, mass, std::abs(mass - 1.0),
                          std::abs(mass - 1.0) < tol});
        }
      }
      for (std::size_t j = 1; j + 2 <= i; ++j) {
        const double mass = density_mass(RenewalDensity::SeparatedPairs, n, i,
                                         j, quad_tol);
        rows.push_back({RenewalDensity::SeparatedPairs, n, i, j, mass,
                        std::abs(mass - 1.0), std::abs(mass - 1.0) < tol});
      }
    }
  }
  return rows;
}

}  // namespace fracdrift
