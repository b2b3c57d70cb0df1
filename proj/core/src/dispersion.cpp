#include "layerwave/dispersion.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "layerwave/error.hpp"

namespace layerwave {

namespace {

void require_order(int order, std::initializer_list<int> allowed, const char* what) {
  for (int o : allowed) {
    if (o == order) return;
  }
  throw InvalidParameter(std::string(what) + ": unsupported order " +
                         std::to_string(order));
}

}  // namespace

std::string_view name(SystemKind s) {
  switch (s) {
    case SystemKind::full2d:
      return "2d";
    case SystemKind::normal1d:
      return "normal1d";
    case SystemKind::transverse1d:
      return "transverse1d";
  }
  return "?";
}

SystemKind parse_system(std::string_view s) {
  if (s == "2d" || s == "full2d") return SystemKind::full2d;
  if (s == "normal1d" || s == "normal") return SystemKind::normal1d;
  if (s == "transverse1d" || s == "transverse") return SystemKind::transverse1d;
  throw InvalidParameter("unknown system '" + std::string(s) +
                         "' (expected 2d, normal1d or transverse1d)");
}

double effective_sound_speed(const MediumAverages& avg, double theta) {
  const double ct = std::cos(theta), st = std::sin(theta);
  return std::sqrt(avg.K_h / avg.rho_h * ct * ct + avg.K_h / avg.rho_m * st * st);
}

double omega_squared(const HomogCoefficients& c, const MediumAverages& avg,
                     double k, double theta, int order) {
  require_order(order, {0, 2, 4}, "omega_squared");
  const double kx = k * std::cos(theta), ky = k * std::sin(theta);
  const double x2 = kx * kx, y2 = ky * ky;
  const double rm = avg.rho_m, rh = avg.rho_h;
  const double pre = avg.K_h / (rh * rm);
  double w = x2 * rm + y2 * rh;
  if (order >= 2) {
    const double a1 = c.get(Coef::alpha1), a2 = c.get(Coef::alpha2);
    const double b1 = c.get(Coef::beta1), b2 = c.get(Coef::beta2);
    const double g1 = c.get(Coef::gamma1), g2 = c.get(Coef::gamma2);
    w += x2 * x2 * rm * (a2 + b2) +
         x2 * y2 * (rm * (a1 + b1) + rh * (a2 + g2)) + y2 * y2 * rh * (a1 + g1);
    if (order >= 4) {
      const double a3 = c.get(Coef::alpha3), a4 = c.get(Coef::alpha4),
                   a5 = c.get(Coef::alpha5);
      const double b3 = c.get(Coef::beta3), b4 = c.get(Coef::beta4),
                   b5 = c.get(Coef::beta5);
      const double g3 = c.get(Coef::gamma3), g4 = c.get(Coef::gamma4),
                   g5 = c.get(Coef::gamma5);
      w += x2 * x2 * x2 * rm * (a2 * b2 - a4 - b4) +
           x2 * x2 * y2 * (rm * (a1 * b2 + a2 * b1 - a5 - b5) + rh * (a2 * g2 - a4 - g5)) +
           x2 * y2 * y2 * (rm * (a1 * b1 - a3 - b3) + rh * (a1 * g2 + a2 * g1 - a5 - g4)) +
           y2 * y2 * y2 * rh * (a1 * g1 - a3 - g3);
    }
  }
  return pre * w;
}

ModeMatrix mode_matrix(const HomogCoefficients& c, const MediumAverages& avg,
                       SystemKind system, double kx, double ky, int order) {
  if (system == SystemKind::transverse1d) {
    require_order(order, {0, 2, 4, 6}, "mode_matrix");
  } else {
    require_order(order, {0, 2, 4}, "mode_matrix");
  }
  const double x2 = kx * kx, y2 = ky * ky;
  // Factors F with S = -i k F for each equation.
  double fa = 1.0, fb = 1.0, fg = 1.0;
  switch (system) {
    case SystemKind::full2d:
      if (order >= 2) {
        fa += c.get(Coef::alpha1) * y2 + c.get(Coef::alpha2) * x2;
        fb += c.get(Coef::beta1) * y2 + c.get(Coef::beta2) * x2;
        fg += c.get(Coef::gamma1) * y2 + c.get(Coef::gamma2) * x2;
      }
      if (order >= 4) {
        fa -= c.get(Coef::alpha3) * y2 * y2 + c.get(Coef::alpha4) * x2 * x2 +
              c.get(Coef::alpha5) * x2 * y2;
        fb -= c.get(Coef::beta3) * y2 * y2 + c.get(Coef::beta4) * x2 * x2 +
              c.get(Coef::beta5) * x2 * y2;
        fg -= c.get(Coef::gamma3) * y2 * y2 + c.get(Coef::gamma4) * x2 * y2 +
              c.get(Coef::gamma5) * x2 * x2;
      }
      break;
    case SystemKind::normal1d:
      if (order >= 2) {
        fa += c.get(Coef::alpha1) * y2;
        fg += c.get(Coef::gamma1) * y2;
      }
      if (order >= 4) {
        fa -= c.get(Coef::alpha3) * y2 * y2;
        fg -= c.get(Coef::gamma3) * y2 * y2;
      }
      break;
    case SystemKind::transverse1d:
      if (order >= 2) {
        fa += c.get(Coef::alpha2) * x2;
        fb += c.get(Coef::beta2) * x2;
      }
      if (order >= 4) {
        fa -= c.get(Coef::alpha4) * x2 * x2;
        fb -= c.get(Coef::beta4) * x2 * x2;
      }
      if (order >= 6) {
        fa += c.get(Coef::alpha6) * x2 * x2 * x2;
        fb += c.get(Coef::beta6) * x2 * x2 * x2;
      }
      break;
  }
  const std::complex<double> X(0.0, kx), Y(0.0, ky);
  ModeMatrix m;
  m.a = -avg.K_h * X * fa;
  m.b = -avg.K_h * Y * fa;
  m.c = -X * fb / avg.rho_h;
  m.d = -Y * fg / avg.rho_m;
  return m;
}

double system_omega_squared(const HomogCoefficients& c, const MediumAverages& avg,
                            SystemKind system, double kx, double ky, int order) {
  return -mode_matrix(c, avg, system, kx, ky, order).lambda_squared().real();
}

std::vector<DispersionSample> dispersion_surface(
    const HomogCoefficients& c, const MediumAverages& avg,
    std::span<const double> k_grid, std::span<const double> theta_grid,
    int order, double cutoff) {
  std::vector<DispersionSample> out;
  out.reserve(k_grid.size() * theta_grid.size());
  for (double th : theta_grid) {
    for (double k : k_grid) {
      DispersionSample s{};
      s.k = k;
      s.theta = th;
      s.kx = k * std::cos(th);
      s.ky = k * std::sin(th);
      s.omega2 = omega_squared(c, avg, k, th, order);
      s.valid = k > 0 && s.omega2 >= 0 && k <= cutoff;
      s.phase_speed = (k > 0 && s.omega2 >= 0)
                          ? std::sqrt(s.omega2) / k
                          : std::numeric_limits<double>::quiet_NaN();
      out.push_back(s);
    }
  }
  return out;
}

std::vector<PolarSample> polar_speed(const MediumAverages& avg,
                                     std::span<const double> theta_grid) {
  std::vector<PolarSample> out;
  out.reserve(theta_grid.size());
  for (double th : theta_grid) out.push_back({th, effective_sound_speed(avg, th)});
  return out;
}

}  // namespace layerwave
