#pragma once

// Seeded generators for property tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "fockgauge/fock.hpp"
#include "fockgauge/states.hpp"

namespace fockgauge::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [lo, hi).
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive
    return lo + static_cast<std::size_t>(next() % (hi - lo + 1));
  }
  // Uniform in the disc of radius r_max.
  Complex disc(double r_max) {
    return std::polar(r_max * std::sqrt(uniform()), uniform(0.0, 2.0 * std::numbers::pi));
  }

  // A mix of random ensembles and structured families.
  QuantumState state() {
    switch (next() % 6) {
      case 0:
        return random_state(index(1, 24), RandomKind::pure, 1, next());
      case 1: {
        const std::size_t cut = index(1, 16);
        return random_state(cut, RandomKind::mixed, index(1, cut + 1), next());
      }
      case 2:
        return coherent(disc(2.5));
      case 3:
        return squeezed_coherent(disc(1.5), uniform(-1.0, 1.0), uniform(0.0, 6.0));
      case 4:
        return crescent(disc(1.5), static_cast<int>(index(0, 4)));
      default:
        return cat(disc(2.0) + Complex{0.3, 0.0}, uniform(0.0, 6.0));
    }
  }

 private:
  std::uint64_t state_;
};

inline std::vector<Complex> unit(std::size_t n, std::size_t len) {
  std::vector<Complex> v(len);
  v[n] = 1.0;
  return v;
}

// || (n - i r x_theta - Omega) psi || with Omega the expectation value.
inline double eigen_residual(const FockVector& psi, double r, double theta) {
  const std::size_t len = psi.cutoff() + 2;
  const FockVector lowered = apply_ladder(psi, Ladder::lower);
  const FockVector raised = apply_ladder(psi, Ladder::raise);
  const Complex up = std::polar(1.0, theta);
  std::vector<Complex> v(len);
  for (std::size_t n = 0; n < len; ++n) {
    const Complex x = (up * lowered[n] + std::conj(up) * raised[n]) / std::sqrt(2.0);
    v[n] = static_cast<double>(n) * psi[n] - Complex{0.0, r} * x;
  }
  Complex omega{};
  for (std::size_t n = 0; n < len; ++n) omega += std::conj(psi[n]) * v[n];
  double res = 0.0;
  for (std::size_t n = 0; n < len; ++n) res += std::norm(v[n] - omega * psi[n]);
  return std::sqrt(res);
}

}  // namespace fockgauge::testing
