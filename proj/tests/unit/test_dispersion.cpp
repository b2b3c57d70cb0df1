#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "layerwave/dispersion.hpp"
#include "layerwave/error.hpp"
#include "support.hpp"

using namespace layerwave;
using std::numbers::pi;

namespace {

HomogCoefficients chain(const Medium& m, int order = 6) {
  return compute_coefficients(solve_fastvars(m, order));
}

}  // namespace

TEST(EffectiveSpeed, AxisValues) {
  const auto avg = averages(lwtest::rho_m8());
  EXPECT_NEAR(effective_sound_speed(avg, pi / 2), 1.0 / std::sqrt(8.0), 1e-12);
  EXPECT_NEAR(effective_sound_speed(avg, 0.0), 1.0, 1e-12);
  MediumAverages h;
  h.K_h = h.K_m = 4;
  h.rho_h = h.rho_m = 1;
  for (double th = 0; th < 2 * pi; th += 0.3) EXPECT_NEAR(effective_sound_speed(h, th), 2.0, 1e-15);
}

TEST(EffectiveSpeed, PolarRatio) {
  std::vector<double> th;
  for (int i = 0; i <= 72; ++i) th.push_back(2 * pi * i / 72);
  const auto polar = polar_speed(averages(lwtest::rho_m8()), th);
  double lo = 1e9, hi = 0;
  for (const auto& s : polar) {
    lo = std::min(lo, s.c_eff);
    hi = std::max(hi, s.c_eff);
  }
  EXPECT_NEAR(hi / lo, std::sqrt(8.0), 1e-10);
}

TEST(OmegaSquared, OrderZeroIsSpeedSquared) {
  const auto m = lwtest::sinusoid();
  const auto c = chain(m);
  const auto avg = averages(m);
  for (double th : {0.0, 0.4, pi / 2, 2.0}) {
    for (double k : {0.1, 1.0, 3.0}) {
      const double ce = effective_sound_speed(avg, th);
      EXPECT_NEAR(omega_squared(c, avg, k, th, 0), ce * ce * k * k, 1e-13);
    }
  }
}

TEST(OmegaSquared, TransverseOrderTwoMatchesPlaneWave) {
  const auto m = lwtest::constant_z();
  const auto c = chain(m);
  const auto avg = averages(m);
  for (double k : {0.2, 0.7, 1.5}) {
    // (1 + a2 k^2)(1 + b2 k^2) truncated after k^2.
    const double want = avg.K_h / avg.rho_h * k * k *
                        (1 + (c.get(Coef::alpha2) + c.get(Coef::beta2)) * k * k);
    EXPECT_NEAR(omega_squared(c, avg, k, 0.0, 2), want, 1e-14);
  }
}

TEST(OmegaSquared, SinusoidOrderFourFormula) {
  const auto m = lwtest::sinusoid();
  const auto c = chain(m);
  const auto avg = averages(m);
  const double k = 2 * pi / 10;
  const double a2 = c.get(Coef::alpha2), b2 = c.get(Coef::beta2);
  const double a4 = c.get(Coef::alpha4), b4 = c.get(Coef::beta4);
  const double k2 = k * k;
  const double want = avg.K_h / avg.rho_h * k2 * (1 + (a2 + b2) * k2 + (a2 * b2 - a4 - b4) * k2 * k2);
  EXPECT_NEAR(omega_squared(c, avg, k, 0.0, 4), want, 1e-14);
  // The per-mode evolution agrees with truncation up to k^8 terms.
  const double exact = system_omega_squared(c, avg, SystemKind::transverse1d, k, 0, 4);
  EXPECT_NEAR(exact, want, 1e-6);
}

TEST(OmegaSquared, OrderFourNeedsCoefficients) {
  const auto m = lwtest::constant_z();
  const auto c = chain(m, 2);
  EXPECT_NO_THROW(omega_squared(c, averages(m), 1.0, 0.3, 2));
  EXPECT_THROW(omega_squared(c, averages(m), 1.0, 0.3, 4), MissingFastVariable);
  EXPECT_THROW(omega_squared(c, averages(m), 1.0, 0.3, 3), InvalidParameter);
}

TEST(OmegaSquared, SymmetryProperty) {
  lwtest::Gen g(51);
  for (int n = 0; n < 20; ++n) {
    const auto m = g.piecewise(0.5, 2.0);
    const auto c = chain(m, 4);
    const auto avg = averages(m);
    for (int s = 0; s < 10; ++s) {
      const double k = g.uniform(0.01, 2 * pi), th = g.uniform(0, 2 * pi);
      for (int order : {0, 2, 4}) {
        const double w = omega_squared(c, avg, k, th, order);
        EXPECT_NEAR(omega_squared(c, avg, k, -th, order), w, 1e-12 * std::max(1.0, std::abs(w)));
        EXPECT_NEAR(omega_squared(c, avg, k, pi - th, order), w,
                    1e-12 * std::max(1.0, std::abs(w)));
      }
    }
  }
}

TEST(OmegaSquared, TruncationConsistencyProperty) {
  // Order 2 and order 4 differ by a k^6 term: halving k divides the gap by 64.
  lwtest::Gen g(52);
  for (int n = 0; n < 20; ++n) {
    const auto m = g.piecewise(0.5, 2.0);
    const auto c = chain(m, 4);
    const auto avg = averages(m);
    const double th = g.uniform(0, pi);
    const double k = 0.4;
    const double d1 = omega_squared(c, avg, k, th, 4) - omega_squared(c, avg, k, th, 2);
    const double d2 = omega_squared(c, avg, k / 2, th, 4) - omega_squared(c, avg, k / 2, th, 2);
    if (std::abs(d1) < 1e-300) continue;
    EXPECT_NEAR(d1 / d2, 64.0, 64e-6);
  }
}

TEST(OmegaSquared, SystemExpansionProperty) {
  // The exact per-mode relation of each truncated system expands to the
  // truncated relation: the remainder is O(k^(order + 4)).
  lwtest::Gen g(53);
  for (int n = 0; n < 20; ++n) {
    const auto m = g.piecewise(0.5, 2.0);
    const auto c = chain(m, 4);
    const auto avg = averages(m);
    const double th = g.uniform(0, pi);
    for (int order : {2, 4}) {
      auto rem = [&](double k) {
        return system_omega_squared(c, avg, SystemKind::full2d, k * std::cos(th),
                                    k * std::sin(th), order) -
               omega_squared(c, avg, k, th, order);
      };
      const double k = 0.02;
      const double r1 = rem(k), r2 = rem(k / 2);
      if (std::abs(r1) < 1e-16) continue;
      const double ratio = r1 / r2;
      EXPECT_NEAR(std::log2(ratio), order + 4, 0.05) << "order " << order;
    }
  }
}

TEST(OmegaSquared, ConstantImpedanceNormalIsNondispersive) {
  const auto m = lwtest::constant_z();
  const auto c = chain(m);
  const auto avg = averages(m);
  for (double k : {0.3, 1.0, 4.0}) {
    const double want = avg.K_h / avg.rho_m * k * k;
    for (int order : {0, 2, 4}) EXPECT_NEAR(omega_squared(c, avg, k, pi / 2, order), want, 1e-12);
  }
}

TEST(DispersionSurface, HomogeneousConstantSpeed) {
  const auto m = lwtest::homogeneous();
  const auto c = chain(m);
  const std::vector<double> ks{0.5, 1, 2, 3}, ths{0, 0.5, 1, 2};
  for (const auto& s : dispersion_surface(c, averages(m), ks, ths, 4)) {
    EXPECT_TRUE(s.valid);
    EXPECT_NEAR(s.phase_speed, 1.0, 1e-14);
  }
}

TEST(DispersionSurface, FlagsInvalidSamples) {
  const auto m = lwtest::constant_z();
  const auto c = chain(m);
  const std::vector<double> ks{0.0, 1.0, 10.0}, ths{0.0};
  const auto s = dispersion_surface(c, averages(m), ks, ths, 2);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_FALSE(s[0].valid);
  EXPECT_TRUE(s[1].valid);
  EXPECT_FALSE(s[2].valid);
  EXPECT_NEAR(s[1].kx, 1.0, 1e-15);
}

TEST(DispersionSurface, AlmostIsotropicAxesAgreeToSecondOrder) {
  const auto m = lwtest::almost_isotropic();
  const auto c = chain(m);
  const auto avg = averages(m);
  for (double k : {0.05, 0.1, 0.2}) {
    const double dx = omega_squared(c, avg, k, 0, 2);
    const double dy = omega_squared(c, avg, k, pi / 2, 2);
    EXPECT_NEAR(dx, dy, 1e-12);
    const double gap = std::abs(omega_squared(c, avg, k, 0, 4) - omega_squared(c, avg, k, pi / 2, 4));
    EXPECT_LE(gap, 10 * std::pow(k, 6));
  }
}

TEST(ModeMatrix, OrderGuards) {
  const auto m = lwtest::constant_z();
  const auto c = chain(m);
  const auto avg = averages(m);
  EXPECT_NO_THROW(mode_matrix(c, avg, SystemKind::transverse1d, 1, 0, 6));
  EXPECT_THROW(mode_matrix(c, avg, SystemKind::full2d, 1, 0, 6), InvalidParameter);
  EXPECT_THROW(mode_matrix(c, avg, SystemKind::normal1d, 0, 1, 6), InvalidParameter);
}

TEST(SystemKind, ParseAndName) {
  EXPECT_EQ(parse_system("2d"), SystemKind::full2d);
  EXPECT_EQ(parse_system("transverse1d"), SystemKind::transverse1d);
  EXPECT_EQ(name(SystemKind::normal1d), "normal1d");
  EXPECT_THROW(parse_system("3d"), InvalidParameter);
}
