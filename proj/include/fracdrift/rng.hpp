#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace fracdrift {

// SplitMix64 step (Vigna). Used only to spread seed material, never as the
// working generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic stream key for worker k of a run: serial and parallel
// execution draw from identical streams as long as they agree on (master,
// k1, k2). Adjacent indices land on unrelated seeds.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t k1,
                                 std::uint64_t k2 = 0) {
  std::uint64_t s = master;
  std::uint64_t out = splitmix64(s);
  s += k1;
  out ^= splitmix64(s);
  s += k2;
  out ^= splitmix64(s);
  return out;
}

// mt19937_64 plus explicit distribution transforms. The transforms are spelled
// out here (instead of <random> distributions) so that a given seed produces
// the same draws on every standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream child(std::uint64_t master, std::uint64_t k1,
                            std::uint64_t k2 = 0) {
    return RandomStream(stream_seed(master, k1, k2));
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal, Box-Muller; the paired draw is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Exponential with the given rate, strictly positive.
  double exponential(double rate) {
    double u;
    do {
      u = uniform01();
    } while (u == 0.0);
    return -std::log(u) / rate;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fracdrift
