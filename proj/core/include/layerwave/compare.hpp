#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "layerwave/directsolver.hpp"
#include "layerwave/wavefield.hpp"

namespace layerwave {

// Trigonometric interpolant of n periodic samples at x0 + i*L/n, evaluated at
// n_out points x0_out + i*L/n_out.
std::vector<double> trig_resample(std::span<const double> values, double length,
                                  double x0, std::size_t n_out, double x0_out);

struct OrderError {
  int order;
  double rel_l2;
  double rel_linf;
};

struct ComparisonReport {
  std::vector<OrderError> errors;  // ascending order
  // Errors strictly decrease with order.
  bool monotone = false;
};

struct OrderedProfile {
  int order;
  Profile profile;
};

// Relative L2 and max errors of each homogenized profile against the
// reference. Profiles on different grids are resampled onto the reference
// grid; domains must coincide (same periodic length and origin up to one
// cell). `length` is the periodic extent shared by all profiles.
ComparisonReport compare_solutions(const Profile& reference,
                                   std::span<const OrderedProfile> homogenized,
                                   double length);

struct AxisSpeedFit {
  double c_x = 0;
  double c_y = 0;
  double residual = 0;  // relative L2 misfit of the best model
  int iterations = 0;
};

// Least-squares fit of p(t) by the leading-order family
// p0_hat(k) cos(sqrt(c_x^2 k_x^2 + c_y^2 k_y^2) t) on the field's periodic grid.
AxisSpeedFit fit_axis_speeds(const WaveField& field, std::span<const double> p0,
                             double t, double c_x_guess, double c_y_guess);

}  // namespace layerwave
