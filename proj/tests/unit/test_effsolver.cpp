#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "layerwave/effsolver.hpp"
#include "layerwave/error.hpp"
#include "layerwave/spectral.hpp"
#include "support.hpp"

using namespace layerwave;
using std::numbers::pi;

namespace {

HomogCoefficients chain(const Medium& m) { return compute_coefficients(solve_fastvars(m, 6)); }

Grid2D grid(std::size_t nx, std::size_t ny, double Lx, double Ly) {
  Grid2D g;
  g.nx = nx;
  g.ny = ny;
  g.Lx = Lx;
  g.Ly = Ly;
  return g;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Few low modes in p and u with random phases.
WaveField band_limited(const Grid2D& g, lwtest::Gen& gen, int modes, int kmax = 3) {
  WaveField f(g);
  for (int m = 0; m < modes; ++m) {
    const int kx = g.nx > 1 ? gen.integer(-kmax, kmax) : 0;
    const int ky = g.ny > 1 ? gen.integer(-kmax, kmax) : 0;
    const double a = gen.uniform(-1, 1), b = gen.uniform(-1, 1), ph = gen.uniform(0, 2 * pi);
    for (std::size_t j = 0; j < g.ny; ++j) {
      for (std::size_t i = 0; i < g.nx; ++i) {
        const double arg = 2 * pi * (kx * g.x(i) / g.Lx + ky * g.y(j) / g.Ly) + ph;
        f.p[g.index(i, j)] += a * std::cos(arg);
        f.u[g.index(i, j)] += b * std::sin(arg);
        f.v[g.index(i, j)] += 0.5 * b * std::cos(arg);
      }
    }
  }
  return f;
}

}  // namespace

TEST(EffRhs, ZeroStateZeroDerivative) {
  const auto m = lwtest::constant_z();
  const WaveField z(grid(16, 8, 4, 2));
  for (int order : {0, 2, 4}) {
    const auto d = rhs_2d(z, chain(m), averages(m), order);
    for (std::size_t k = 0; k < z.grid.size(); ++k) {
      EXPECT_EQ(d.p[k], 0.0);
      EXPECT_EQ(d.u[k], 0.0);
      EXPECT_EQ(d.v[k], 0.0);
    }
  }
}

TEST(EffRhs, OrderZeroSinePressure) {
  const auto m = lwtest::constant_z();
  const auto avg = averages(m);
  const double Lx = 5;
  WaveField s(grid(32, 4, Lx, 1));
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < 32; ++i) s.p[s.grid.index(i, j)] = std::sin(2 * pi * s.grid.x(i) / Lx);
  }
  const auto d = rhs_2d(s, chain(m), avg, 0);
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < 32; ++i) {
      const auto k = s.grid.index(i, j);
      EXPECT_NEAR(d.u[k], -(2 * pi / Lx) / avg.rho_h * std::cos(2 * pi * s.grid.x(i) / Lx), 1e-12);
      EXPECT_NEAR(d.p[k], 0.0, 1e-12);
      EXPECT_NEAR(d.v[k], 0.0, 1e-12);
    }
  }
}

TEST(EffRhs, DimensionalReductionProperty) {
  lwtest::Gen gen(71);
  const auto m = lwtest::sinusoid();
  const auto c = chain(m);
  const auto avg = averages(m);
  for (int trial = 0; trial < 10; ++trial) {
    const auto line = band_limited(grid(32, 1, 20, 1), gen, 3);
    WaveField full(grid(32, 8, 20, 4));
    for (std::size_t j = 0; j < 8; ++j) {
      for (std::size_t i = 0; i < 32; ++i) {
        full.p[full.grid.index(i, j)] = line.p[i];
        full.u[full.grid.index(i, j)] = line.u[i];
      }
    }
    for (int order : {0, 2, 4}) {
      const auto d2 = rhs_2d(full, c, avg, order);
      auto lcopy = line;
      std::fill(lcopy.v.begin(), lcopy.v.end(), 0.0);
      const auto d1 = rhs(lcopy, c, avg, SystemKind::transverse1d, order);
      for (std::size_t j = 0; j < 8; ++j) {
        for (std::size_t i = 0; i < 32; ++i) {
          const auto k = full.grid.index(i, j);
          EXPECT_NEAR(d2.p[k], d1.p[i], 1e-10);
          EXPECT_NEAR(d2.u[k], d1.u[i], 1e-10);
          EXPECT_NEAR(d2.v[k], 0.0, 1e-12);
        }
      }
    }
  }
}

TEST(EffRun, DimensionalReductionBothAxes) {
  lwtest::Gen gen(72);
  const auto m = lwtest::sinusoid();
  const auto c = chain(m);
  const auto avg = averages(m);
  EffSolverParams p;
  p.t_end = 2.0;
  p.order = 4;
  {
    const auto line = band_limited(grid(64, 1, 40, 1), gen, 3);
    WaveField full(grid(64, 4, 40, 2));
    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t i = 0; i < 64; ++i) {
        full.p[full.grid.index(i, j)] = line.p[i];
        full.u[full.grid.index(i, j)] = line.u[i];
      }
    }
    auto lcopy = line;
    std::fill(lcopy.v.begin(), lcopy.v.end(), 0.0);
    p.system = SystemKind::full2d;
    const auto r2 = run(c, avg, p, full).back();
    p.system = SystemKind::transverse1d;
    const auto r1 = run(c, avg, p, lcopy).back();
    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t i = 0; i < 64; ++i) {
        EXPECT_NEAR(r2.p[full.grid.index(i, j)], r1.p[i], 1e-10);
      }
    }
  }
  {
    const auto col = band_limited(grid(1, 64, 1, 40), gen, 3);
    WaveField full(grid(4, 64, 2, 40));
    auto ccopy = col;
    std::fill(ccopy.u.begin(), ccopy.u.end(), 0.0);
    for (std::size_t j = 0; j < 64; ++j) {
      for (std::size_t i = 0; i < 4; ++i) {
        full.p[full.grid.index(i, j)] = col.p[j];
        full.v[full.grid.index(i, j)] = col.v[j];
      }
    }
    p.system = SystemKind::full2d;
    const auto r2 = run(c, avg, p, full).back();
    p.system = SystemKind::normal1d;
    const auto r1 = run(c, avg, p, ccopy).back();
    for (std::size_t j = 0; j < 64; ++j) {
      for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(r2.p[full.grid.index(i, j)], r1.p[j], 1e-10);
        EXPECT_NEAR(r2.v[full.grid.index(i, j)], r1.v[j], 1e-10);
      }
    }
  }
}

TEST(EffRun, MatchesExactPropagatorProperty) {
  // Order 4 loses hyperbolicity near |k| = 2 pi for constant Z, and below 2
  // for rho_m = 8, so the cutoffs sit inside the hyperbolic range.
  struct Case {
    Medium m;
    double cutoff, L;
    std::size_t n;
  };
  lwtest::Gen gen(73);
  const Case cases[] = {{lwtest::constant_z(), 6.0, 80, 128},
                        {lwtest::sinusoid(), 6.0, 80, 128},
                        {lwtest::rho_m8(), 2.0, 160, 256}};
  for (const auto& cs : cases) {
    const auto c = chain(cs.m);
    const auto avg = averages(cs.m);
    for (int order : {0, 2, 4}) {
      const auto init = band_limited(grid(cs.n, cs.n, cs.L, cs.L), gen, 3, 1);
      EffSolverParams p;
      p.order = order;
      p.t_end = 3.0;
      p.spectral_cutoff = cs.cutoff;
      const auto r = run(c, avg, p, init).back();
      const auto e = propagate_exact(c, avg, SystemKind::full2d, order, init, 3.0, cs.cutoff);
      EXPECT_LT(max_diff(r.p, e.p), 1e-8);
      EXPECT_LT(max_diff(r.u, e.u), 1e-8);
      EXPECT_LT(max_diff(r.v, e.v), 1e-8);
    }
  }
}

TEST(EffRun, OrderZeroEnergyConserved) {
  lwtest::Gen gen(74);
  const auto m = lwtest::rho_m8();
  const auto avg = averages(m);
  const auto init = band_limited(grid(128, 128, 80, 80), gen, 6, 1);
  EffSolverParams p;
  p.t_end = 10;
  const auto r = run(chain(m), avg, p, init).back();
  const double e0 = effective_energy(init, avg), e1 = effective_energy(r, avg);
  EXPECT_LT(std::abs(e1 - e0) / e0, 1e-8);
}

TEST(EffRun, SnapshotsAscending) {
  const auto m = lwtest::constant_z();
  WaveField init(grid(16, 16, 8, 8));
  init.p[0] = 1;
  EffSolverParams p;
  p.t_end = 2;
  p.output_times = {1.5, 0.5, 3.0, 0.5};
  EffRunInfo info;
  const auto snaps = run(chain(m), averages(m), p, init, &info);
  ASSERT_EQ(snaps.size(), 3u);
  EXPECT_EQ(snaps[0].t, 0.5);
  EXPECT_EQ(snaps[1].t, 1.5);
  EXPECT_EQ(snaps[2].t, 2.0);
  EXPECT_GT(info.steps, 0u);
  EXPECT_GT(info.max_omega, 0.0);
}

TEST(EffRun, HomogeneousIsotropicFront) {
  const auto m = lwtest::homogeneous();
  const auto avg = averages(m);
  Grid2D g = grid(128, 128, 40, 40);
  g.x0 = g.y0 = -20;
  WaveField init(g);
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      init.p[g.index(i, j)] = std::exp(-(g.x(i) * g.x(i) + g.y(j) * g.y(j)) / 8.0);
    }
  }
  EffSolverParams p;
  p.t_end = 8;
  const auto r = run(chain(m), avg, p, init).back();
  // Symmetric under x <-> y on a square grid.
  for (std::size_t j = 0; j < g.ny; j += 7) {
    for (std::size_t i = 0; i < g.nx; i += 5) {
      EXPECT_NEAR(r.p[g.index(i, j)], r.p[g.index(j, i)], 1e-10);
    }
  }
}

TEST(EffRun, ConstantSoundSpeedOrdersCoincide) {
  const auto m = Medium::piecewise(2, 0.5, 2, 0.5);
  const auto c = chain(m);
  const auto avg = averages(m);
  Grid2D g = grid(128, 1, 64, 1);
  g.x0 = -32;
  WaveField init(g);
  for (std::size_t i = 0; i < g.nx; ++i) init.p[i] = 10 * std::exp(-g.x(i) * g.x(i) / 10);
  EffSolverParams p;
  p.system = SystemKind::transverse1d;
  p.t_end = 5;
  p.order = 0;
  const auto r0 = run(c, avg, p, init).back();
  for (int order : {2, 4, 6}) {
    p.order = order;
    const auto r = run(c, avg, p, init).back();
    EXPECT_LT(max_diff(r.p, r0.p), 1e-10) << order;
  }
}

TEST(EffRun, RejectsBadGrids) {
  const auto m = lwtest::constant_z();
  EffSolverParams p;
  EXPECT_THROW(run(chain(m), averages(m), p, WaveField(grid(12, 16, 1, 1))), InvalidParameter);
  p.system = SystemKind::transverse1d;
  EXPECT_THROW(run(chain(m), averages(m), p, WaveField(grid(16, 16, 1, 1))), InvalidParameter);
  p.system = SystemKind::full2d;
  p.order = 6;
  EXPECT_THROW(run(chain(m), averages(m), p, WaveField(grid(16, 16, 1, 1))), InvalidParameter);
}

TEST(EffRun, IllPosedModeReported) {
  // alpha2 and beta2 differ, so 1 + alpha2 k^2 and 1 + beta2 k^2 change sign
  // at different k and omega^2 < 0 in between.
  const auto m = lwtest::sinusoid();
  Grid2D g = grid(256, 1, 8, 1);
  WaveField init(g);
  EffSolverParams p;
  p.system = SystemKind::transverse1d;
  p.order = 2;
  p.spectral_cutoff = 0;
  try {
    (void)run(chain(m), averages(m), p, init);
    FAIL() << "expected instability";
  } catch (const SolverInstability& e) {
    EXPECT_NE(std::string(e.what()).find("kx="), std::string::npos) << e.what();
  }
}

TEST(ExactPropagator, IdentityAtZero) {
  const auto m = lwtest::sinusoid();
  const auto P = exact_mode_propagator(chain(m), averages(m), SystemKind::full2d, 0.7, 0.3, 4, 0.0);
  for (std::size_t r = 0; r < 9; ++r) {
    EXPECT_NEAR(std::abs(P.m[r] - std::complex<double>(r % 4 == 0 ? 1.0 : 0.0)), 0.0, 1e-15);
  }
}

TEST(ExactPropagator, AcousticFrequencies) {
  // With k_y = 0 the map is a rotation at omega = c_eff k in (p, u) and the
  // v component never changes.
  const auto m = lwtest::rho_m8();
  const auto avg = averages(m);
  const double k = 0.9, t = 2.3;
  const auto P = exact_mode_propagator(chain(m), avg, SystemKind::full2d, k, 0, 0, t);
  const double w = effective_sound_speed(avg, 0) * k;
  EXPECT_NEAR(P.m[0].real(), std::cos(w * t), 1e-13);
  EXPECT_NEAR(P.m[8].real(), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(P.m[2]), 0.0, 1e-14);
  const auto Z = exact_mode_propagator(chain(m), avg, SystemKind::full2d, 0, 0, 0, t);
  EXPECT_TRUE(Z.series);
}

TEST(Reconstruct, HomogeneousIdentityAndMean) {
  lwtest::Gen gen(75);
  const auto f = band_limited(grid(16, 16, 4, 4), gen, 3);
  const std::vector<double> yh{0.1, 0.5, 0.9};
  const auto r = reconstruct_fast_scale_u(f, lwtest::homogeneous(), true, yh);
  for (std::size_t h = 0; h < yh.size(); ++h) {
    for (std::size_t k = 0; k < f.grid.size(); ++k) EXPECT_NEAR(r[h * f.grid.size() + k], f.u[k], 1e-14);
  }
}

TEST(Reconstruct, TwoValueLayers) {
  lwtest::Gen gen(76);
  const auto f = band_limited(grid(8, 8, 4, 4), gen, 2);
  const std::vector<double> yh{0.5, 0.0};
  const auto r = reconstruct_fast_scale_u(f, lwtest::constant_z(), false, yh);
  const std::size_t n = f.grid.size();
  for (std::size_t k = 0; k < n; ++k) {
    EXPECT_NEAR(r[k], 0.4 * f.u[k], 1e-14);
    EXPECT_NEAR(r[n + k], 1.6 * f.u[k], 1e-14);
    // Equal band widths: the period mean is the average of the two values.
    EXPECT_NEAR(0.5 * (r[k] + r[n + k]), f.u[k], 1e-14);
  }
}

TEST(Reconstruct, SmoothMeanPreserved) {
  lwtest::Gen gen(77);
  const auto f = band_limited(grid(8, 8, 4, 4), gen, 2);
  std::vector<double> yh;
  for (int i = 0; i < 256; ++i) yh.push_back(i / 256.0);
  const auto r = reconstruct_fast_scale_u(f, lwtest::sinusoid(), false, yh);
  const std::size_t n = f.grid.size();
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0;
    for (std::size_t h = 0; h < yh.size(); ++h) s += r[h * n + k];
    EXPECT_NEAR(s / yh.size(), f.u[k], 1e-12);
  }
}
