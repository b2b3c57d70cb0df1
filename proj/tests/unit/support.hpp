#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "layerwave/medium.hpp"

namespace lwtest {

inline layerwave::Medium homogeneous() { return layerwave::Medium::piecewise(1, 1, 1, 1); }
inline layerwave::Medium constant_z() {
  return layerwave::Medium::piecewise(5.0 / 8.0, 5.0 / 2.0, 8.0 / 5.0, 2.0 / 5.0);
}
inline layerwave::Medium rho_m8() {
  return layerwave::Medium::piecewise(1, 1, 8 + std::sqrt(56.0), 8 - std::sqrt(56.0));
}
inline layerwave::Medium sinusoid() { return layerwave::Medium::sinusoidal(5.0 / 8.0, 5.0 / 2.0); }
inline layerwave::Medium almost_isotropic() {
  return layerwave::Medium::piecewise(17.0 / 2.0, 17.0 / 32.0, 1, 1);
}

// Deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(unsigned long long seed) : rng_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  layerwave::Medium piecewise(double lo = 0.1, double hi = 10.0) {
    return layerwave::Medium::piecewise(uniform(lo, hi), uniform(lo, hi), uniform(lo, hi),
                                        uniform(lo, hi));
  }

 private:
  std::mt19937_64 rng_;
};

inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace lwtest
