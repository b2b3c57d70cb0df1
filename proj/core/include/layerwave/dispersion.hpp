#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "layerwave/coeffs.hpp"
#include "layerwave/medium.hpp"

namespace layerwave {

// Which effective system a mode belongs to. The reduced systems keep only the
// coefficients that survive for x-constant (normal) or y-constant
// (transverse) data; transverse is the only one carrying the sixth order.
enum class SystemKind { full2d, normal1d, transverse1d };

std::string_view name(SystemKind s);
SystemKind parse_system(std::string_view s);

// Validity cutoff on |k| for a unit period.
inline constexpr double kWavenumberCutoff = 2.0 * std::numbers::pi;

double effective_sound_speed(const MediumAverages& avg, double theta);

// Squared frequency from the dispersion relation truncated at order 0, 2 or 4
// in the wavenumber, with k_x = k cos(theta), k_y = k sin(theta).
double omega_squared(const HomogCoefficients& c, const MediumAverages& avg,
                     double k, double theta, int order);

// Fourier symbol of one mode: d/dt (p, u, v) = M (p, u, v) with
// M = [[0, a, b], [c, 0, 0], [d, 0, 0]].
struct ModeMatrix {
  std::complex<double> a, b, c, d;
  // a c + b d; its negative is the squared frequency.
  std::complex<double> lambda_squared() const { return a * c + b * d; }
};

// Exact symbol of the effective system truncated at `order`. Orders above 4
// are accepted only for the transverse system. Coefficients outside the
// system are never read.
ModeMatrix mode_matrix(const HomogCoefficients& c, const MediumAverages& avg,
                       SystemKind system, double kx, double ky, int order);

// Squared frequency of the (untruncated) per-mode evolution of the system.
double system_omega_squared(const HomogCoefficients& c, const MediumAverages& avg,
                            SystemKind system, double kx, double ky, int order);

struct DispersionSample {
  double k;
  double theta;
  double kx;
  double ky;
  double omega2;
  double phase_speed;  // NaN unless valid
  bool valid;
};

std::vector<DispersionSample> dispersion_surface(
    const HomogCoefficients& c, const MediumAverages& avg,
    std::span<const double> k_grid, std::span<const double> theta_grid,
    int order, double cutoff = kWavenumberCutoff);

struct PolarSample {
  double theta;
  double c_eff;
};

std::vector<PolarSample> polar_speed(const MediumAverages& avg,
                                     std::span<const double> theta_grid);

}  // namespace layerwave
