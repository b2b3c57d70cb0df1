#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "layerwave/medium.hpp"
#include "layerwave/wavefield.hpp"

namespace layerwave {

enum class Limiter { none, minmod, superbee, mc };

std::string_view name(Limiter l);
Limiter parse_limiter(std::string_view s);
double limit(Limiter l, double theta);

// Cell-centred finite-volume grid with per-cell material.
class FVGrid {
 public:
  FVGrid(const Grid2D& grid, std::vector<double> K, std::vector<double> rho);

  // Samples a y-periodic medium at cell centres. The y extent must hold an
  // integer number of periods with an integer number of cells per period
  // (at least 8, and a multiple of 4 for piecewise media so that the layer
  // interfaces fall on cell edges).
  static FVGrid from_medium(const Medium& medium, const Grid2D& grid);

  const Grid2D& grid() const { return grid_; }
  std::span<const double> K() const { return K_; }
  std::span<const double> rho() const { return rho_; }
  std::span<const double> Z() const { return Z_; }
  std::span<const double> c() const { return c_; }
  double c_max() const { return c_max_; }

 private:
  Grid2D grid_;
  std::vector<double> K_, rho_, Z_, c_;
  double c_max_ = 0;
};

struct RiemannSolution {
  // Wave strengths on eigenvectors (-Z_l, 1) and (Z_r, 1) in (p, normal velocity).
  double alpha_left, alpha_right;
  std::array<double, 2> wave_left, wave_right;
  double speed_left, speed_right;
  // Left- and right-going fluctuations A^-dQ and A^+dQ.
  std::array<double, 2> amdq, apdq;
};

// Linear acoustics Riemann problem across an interface; states are
// (p, normal velocity).
RiemannSolution riemann_acoustics(std::array<double, 2> q_left,
                                  std::array<double, 2> q_right, double Z_l,
                                  double Z_r, double c_l, double c_r);

struct FVParams {
  double cfl = 0.9;
  Limiter limiter = Limiter::mc;
  double t_end = 1.0;
  std::vector<double> output_times;
};

struct FVRunInfo {
  double dt = 0;
  std::size_t steps = 0;
  double energy_initial = 0;
  double energy_final = 0;
};

// One split step (x then y when x_first, else y then x) of size dt, in place.
void step_fv(const FVGrid& grid, WaveField& state, double dt, Limiter limiter,
             bool x_first);

// Largest stable step for a CFL number.
double fv_time_step(const FVGrid& grid, double cfl);

// Time loop with alternating sweep order; snapshots at output_times and t_end.
std::vector<WaveField> run_fv(const FVGrid& grid, const WaveField& initial,
                              const FVParams& params, FVRunInfo* info = nullptr);

// sum (p^2/(2K) + rho (u^2+v^2)/2) dx dy
double acoustic_energy(const FVGrid& grid, const WaveField& f);

struct Profile {
  std::vector<double> x, p, u;
};

// Mean over all rows, per column.
Profile y_average(const WaveField& f);

}  // namespace layerwave
