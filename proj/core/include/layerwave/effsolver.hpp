#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "layerwave/coeffs.hpp"
#include "layerwave/dispersion.hpp"
#include "layerwave/medium.hpp"
#include "layerwave/wavefield.hpp"

namespace layerwave {

struct EffSolverParams {
  SystemKind system = SystemKind::full2d;
  int order = 0;
  double safety = 0.5;
  double t_end = 1.0;
  // Extra snapshot times in (0, t_end); t_end is always emitted.
  std::vector<double> output_times;
  // Modes with |k| above this are held fixed when order > 0, because the
  // truncated systems can be ill-posed there. Zero or negative disables it.
  double spectral_cutoff = kWavenumberCutoff;
};

struct EffRunInfo {
  double dt = 0;
  std::size_t steps = 0;
  double max_omega = 0;
  std::size_t frozen_modes = 0;
};

// Validates the field shape against the system: transverse1d needs ny == 1,
// normal1d needs nx == 1, and 2d needs both sizes >= 2. Sizes must be powers
// of two.
void validate_field(SystemKind system, const Grid2D& grid);

// Time derivative of the state under the effective system, evaluated with
// spectral differentiation.
WaveField rhs(const WaveField& state, const HomogCoefficients& c,
              const MediumAverages& avg, SystemKind system, int order);

inline WaveField rhs_2d(const WaveField& state, const HomogCoefficients& c,
                        const MediumAverages& avg, int order) {
  return rhs(state, c, avg, SystemKind::full2d, order);
}

// RK4 in time; returns snapshots at output_times and t_end, ascending.
std::vector<WaveField> run(const HomogCoefficients& c, const MediumAverages& avg,
                           const EffSolverParams& params, const WaveField& initial,
                           EffRunInfo* info = nullptr);

struct ModePropagator {
  std::array<std::complex<double>, 9> m;  // row-major 3x3
  bool series = false;  // small-frequency series branch was used
};

// exp(M t) for one Fourier mode of the system, via M^3 = (ac+bd) M.
ModePropagator exact_mode_propagator(const HomogCoefficients& c,
                                     const MediumAverages& avg, SystemKind system,
                                     double kx, double ky, int order, double t);

// Evolves every Fourier mode of `initial` with exact_mode_propagator. Modes
// above spectral_cutoff are held fixed when order > 0, as in run_effective.
WaveField propagate_exact(const HomogCoefficients& c, const MediumAverages& avg,
                          SystemKind system, int order, const WaveField& initial,
                          double t, double spectral_cutoff = kWavenumberCutoff);

// Effective energy  sum (p^2/K_h + rho_h u^2 + rho_m v^2) dx dy.
double effective_energy(const WaveField& f, const MediumAverages& avg);

// Fast-scale horizontal velocity u(x, y, yhat) for each yhat in yhats,
// laid out [yhat][j][i].
std::vector<double> reconstruct_fast_scale_u(const WaveField& mean_field,
                                             const Medium& medium,
                                             bool include_first_correction,
                                             std::span<const double> yhats);

}  // namespace layerwave
