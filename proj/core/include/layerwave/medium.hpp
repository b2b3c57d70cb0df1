#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace layerwave {

enum class MediumKind { piecewise, sinusoidal, tabulated };

std::string to_string(MediumKind kind);

// Pointwise material state at one fast-scale position.
struct MaterialSample {
  double K;    // bulk modulus
  double rho;  // density
  double Z;    // impedance sqrt(K rho)
  double c;    // sound speed sqrt(K / rho)
};

// Two-layer parameters. Material A occupies |y - floor(y) - 1/2| < 1/4.
struct LayerPair {
  double K_A, K_B, rho_A, rho_B;
};

// Period-averaged material properties.
struct MediumAverages {
  double K_m = 1.0;
  double K_h = 1.0;
  double rho_m = 1.0;
  double rho_h = 1.0;
  bool constant_impedance = true;
  bool constant_soundspeed = true;
};

// One period (length 1) of a y-periodic material. Immutable after construction.
class Medium {
 public:
  static Medium piecewise(double K_A, double K_B, double rho_A, double rho_B);
  // K(y) = (K_A+K_B)/2 + (K_A-K_B)/2 sin(2 pi y), rho = 1/K.
  static Medium sinusoidal(double K_A, double K_B);
  // Uniform samples at y_i = i/n, i = 0..n-1.
  static Medium tabulated(std::vector<double> K, std::vector<double> rho);

  static constexpr double kPeriod = 1.0;
  static constexpr std::size_t kDefaultSamples = 4096;

  MediumKind kind() const { return kind_; }

  // Throws UnsupportedMedium unless kind() == piecewise.
  const LayerPair& layers() const;
  // Sinusoid endpoints (K_A, K_B); throws unless kind() == sinusoidal.
  std::pair<double, double> sinusoid() const;
  std::span<const double> table_K() const { return table_K_; }
  std::span<const double> table_rho() const { return table_rho_; }

  // Position is reduced modulo 1. Tabulated media interpolate linearly.
  MaterialSample sample(double y) const;
  // Samples at y_i = i/n.
  std::vector<MaterialSample> sample_grid(std::size_t n) const;

  // True when y falls strictly inside the A band of a piecewise medium.
  static bool in_band_a(double y);

  // Human-readable one-line description for manifests and logs.
  std::string describe() const;

 private:
  Medium() = default;

  MediumKind kind_ = MediumKind::piecewise;
  LayerPair layers_{1, 1, 1, 1};
  double sin_K_A_ = 1.0, sin_K_B_ = 1.0;
  std::vector<double> table_K_, table_rho_;
};

// Arithmetic and harmonic period averages. Piecewise media are averaged
// exactly; the others use the periodic trapezoid rule on n_samples points.
MediumAverages averages(const Medium& medium,
                        std::size_t n_samples = Medium::kDefaultSamples);

}  // namespace layerwave
