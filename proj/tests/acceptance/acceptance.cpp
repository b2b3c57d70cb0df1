/// Acceptance checks. One PASS/FAIL line per criterion; exit status is
/// nonzero when any selected criterion fails.
///
///   layerwave_acceptance [--criterion N] [--keep-artifacts DIR]

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "layerwave/coeffs.hpp"
#include "layerwave/directsolver.hpp"
#include "layerwave/effsolver.hpp"
#include "layerwave/experiments.hpp"
#include "layerwave/fastfield.hpp"
#include "layerwave/periodic_function.hpp"

using namespace layerwave;
using std::numbers::pi;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
};

std::filesystem::path g_artifacts;

RunOptions run_options() {
  RunOptions o;
  o.write_files = !g_artifacts.empty();
  return o;
}

double seconds(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

HomogCoefficients chain(const Medium& m, int order = 6) {
  return compute_coefficients(solve_fastvars(m, order));
}

bool within(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

void criterion1(Outcome& o) {
  const std::array<std::pair<Coef, double>, 17> table{{
      {Coef::alpha1, 2.2656e-10}, {Coef::alpha2, -1.3208e-2}, {Coef::alpha3, -1.8927e-11},
      {Coef::alpha4, -1.8172e-4}, {Coef::alpha5, 1.3398e-3},  {Coef::alpha6, 6.0711e-6},
      {Coef::beta1, 2.9249e-4},   {Coef::beta2, -1.1033e-2},  {Coef::beta3, -5.6345e-7},
      {Coef::beta4, -2.3474e-5},  {Coef::beta5, 1.1465e-3},   {Coef::beta6, 6.9060e-6},
      {Coef::gamma1, 2.2656e-10}, {Coef::gamma2, 1.2843e-2},  {Coef::gamma3, -1.8927e-11},
      {Coef::gamma4, -1.3391e-3}, {Coef::gamma5, -1.6986e-4},
  }};
  const auto t0 = Clock::now();
  const auto c = chain(Medium::sinusoidal(5.0 / 8.0, 5.0 / 2.0));
  const double dt = seconds(t0);
  double worst = 0;
  for (const auto& [k, want] : table) {
    const double got = c.get(k);
    const bool tiny = std::abs(want) < 1e-9;
    const double err = tiny ? std::abs(got - want) : std::abs(got - want) / std::abs(want);
    if (!tiny) worst = std::max(worst, err);
    o.check(tiny ? err <= 1e-9 : err <= 1e-3,
            std::string(name(k)) + "=" + std::to_string(got));
  }
  o.check(dt < 5.0, "runtime");
  o.detail << " max rel err " << worst << ", " << dt << " s";
}

void criterion2(Outcome& o) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(0.1, 10.0);
  double worst = 0;
  for (int n = 0; n < 100; ++n) {
    const auto m = Medium::piecewise(U(rng), U(rng), U(rng), U(rng));
    const auto c = chain(m, 2);
    const auto cf = closed_form_first_order_layered(m);
    for (Coef k : {Coef::alpha1, Coef::alpha2, Coef::beta1, Coef::beta2, Coef::gamma1,
                   Coef::gamma2}) {
      const double a = c.get(k), b = cf.get(k);
      const double err = std::abs(a - b) / std::max(1.0, std::abs(b));
      worst = std::max(worst, err);
      if (err > 1e-10) o.check(false, std::string(name(k)) + " draw " + std::to_string(n));
    }
  }
  const double dt = seconds(t0);
  o.check(dt < 30.0, "runtime");
  o.detail << " max err " << worst << ", " << dt << " s";
}

void criterion3(Outcome& o) {
  auto small = [&](const Medium& m, const char* label, std::initializer_list<Coef> ks) {
    const auto c = chain(m);
    for (Coef k : ks) {
      const double v = c.get(k);
      o.detail << " " << label << ":" << name(k) << "=" << v;
      o.check(std::abs(v) < 1e-9, std::string(label) + " " + std::string(name(k)));
    }
  };
  const std::initializer_list<Coef> z_set{Coef::alpha1, Coef::beta1, Coef::gamma1,
                                          Coef::alpha3, Coef::beta3, Coef::gamma3};
  const std::initializer_list<Coef> c_set{Coef::alpha2, Coef::beta2, Coef::alpha4,
                                          Coef::beta4,  Coef::alpha6, Coef::beta6};
  small(Medium::piecewise(5.0 / 8, 5.0 / 2, 8.0 / 5, 2.0 / 5), "Zpw", z_set);
  small(Medium::sinusoidal(5.0 / 8, 5.0 / 2), "Zsin", z_set);
  small(Medium::piecewise(2.0, 0.5, 2.0, 0.5), "cpw", c_set);
  std::vector<double> K(4096), rho(4096);
  for (std::size_t i = 0; i < K.size(); ++i) {
    K[i] = 1.5625 - 0.9375 * std::sin(2 * pi * static_cast<double>(i) / 4096.0);
    rho[i] = K[i];
  }
  small(Medium::tabulated(K, rho), "csin", c_set);
}

void criterion4(Outcome& o) {
  const auto m1 = Medium::piecewise(1, 1, 8 + std::sqrt(56.0), 8 - std::sqrt(56.0));
  const auto n = combined_leading_dispersion(chain(m1, 2));
  const auto n_cf = closed_form_leading_dispersion(m1);
  o.detail << " alpha1+gamma1=" << n.normal << " formula=" << n_cf.normal;
  o.check(std::abs(n.normal - 224.0 / 12288.0) < 1e-10, "alpha1+gamma1 vs 224/12288");
  o.check(std::abs(n.normal - n_cf.normal) < 1e-10, "alpha1+gamma1 vs formula");
  const auto m2 = Medium::piecewise(5.0 / 8, 5.0 / 2, 8.0 / 5, 2.0 / 5);
  const auto t = combined_leading_dispersion(chain(m2, 2));
  const auto t_cf = closed_form_leading_dispersion(m2);
  o.detail << " alpha2+beta2=" << t.transverse << " formula=" << t_cf.transverse;
  o.check(std::abs(t.transverse - t_cf.transverse) < 1e-10, "alpha2+beta2 vs formula");
}

void criterion5(Outcome& o) {
  const auto t0 = Clock::now();
  const auto res = run_builtin("anisotropy", g_artifacts, run_options());
  const double dt = seconds(t0);
  const double want_x = 5.0, want_y = 5.0 / std::sqrt(8.0);
  const FrontResult* fv = nullptr;
  const FrontResult* eff = nullptr;
  for (const auto& f : res.front().fronts) {
    if (f.solver == "fv") fv = &f;
    if (f.solver == "eff" && f.order == 0) eff = &f;
  }
  if (!fv || !eff) {
    o.check(false, "missing front fits");
    return;
  }
  const double ex = std::abs(fv->front_x - want_x) / want_x;
  const double ey = std::abs(fv->front_y - want_y) / want_y;
  const double mx = std::abs(eff->front_x - fv->front_x) / fv->front_x;
  const double my = std::abs(eff->front_y - fv->front_y) / fv->front_y;
  o.detail << " fv front (" << fv->front_x << ", " << fv->front_y << ") eff front ("
           << eff->front_x << ", " << eff->front_y << ")";
  o.check(ex <= 0.03, "fv x front");
  o.check(ey <= 0.03, "fv y front");
  o.check(mx <= 0.03, "eff vs fv x");
  o.check(my <= 0.03, "eff vs fv y");
  const auto& runs = res.front().manifest.at("runs");
  for (const auto& r : runs) {
    if (r.at("solver") == "fv") {
      const double e0 = r.at("energy_initial"), e1 = r.at("energy_final");
      o.detail << " fv energy change " << (e1 - e0) / e0;
    }
  }
  o.check(dt < 300.0, "runtime");
  o.detail << ", " << dt << " s";
}

void criterion6(Outcome& o) {
  const auto t0 = Clock::now();
  const auto res = run_builtin("planewave-transverse", g_artifacts, run_options());
  const double dt = seconds(t0);
  for (const auto& r : res) {
    const auto& rep = *r.comparison;
    o.detail << " " << r.manifest.at("name").get<std::string>() << ":";
    for (std::size_t i = 0; i < rep.errors.size(); ++i) {
      o.detail << " e" << rep.errors[i].order << "=" << rep.errors[i].rel_l2;
      if (i > 0) {
        o.check(rep.errors[i].rel_l2 < rep.errors[i - 1].rel_l2,
                r.manifest.at("name").get<std::string>() + " order " +
                    std::to_string(rep.errors[i].order) + " not below order " +
                    std::to_string(rep.errors[i - 1].order));
      }
      if (rep.errors[i].order == 4) {
        o.check(rep.errors[i].rel_l2 < 0.05, "order-4 error");
      }
    }
    for (const auto& run : r.manifest.at("runs")) {
      if (run.at("solver") == "fv") {
        const double e0 = run.at("energy_initial"), e1 = run.at("energy_final");
        o.detail << " (fv energy change " << (e1 - e0) / e0 << ")";
      }
    }
  }
  o.check(dt < 900.0, "runtime");
  o.detail << ", " << dt << " s";
}

// Low-mode data for the effective-solver checks.
WaveField band_limited(const Grid2D& g) {
  WaveField f(g);
  const int modes[3][2] = {{1, 0}, {1, -1}, {0, 1}};
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      for (int m = 0; m < 3; ++m) {
        const double arg =
            2 * pi * (modes[m][0] * g.x(i) / g.Lx + modes[m][1] * g.y(j) / g.Ly) + 0.7 * m;
        f.p[g.index(i, j)] += std::cos(arg) / (m + 1);
        f.u[g.index(i, j)] += 0.3 * std::sin(arg);
      }
    }
  }
  return f;
}

double fv_advection_error(std::size_t n) {
  Grid2D g;
  g.nx = n;
  g.ny = 1;
  g.cell_centered = true;
  const FVGrid fg(g, std::vector<double>(n, 1.0), std::vector<double>(n, 1.0));
  WaveField q(g);
  const double h = 1.0 / static_cast<double>(n);
  auto avg = [](double a, double b) {
    return (std::cos(2 * pi * a) - std::cos(2 * pi * b)) / (2 * pi * (b - a));
  };
  for (std::size_t i = 0; i < n; ++i) {
    q.p[i] = q.u[i] = avg(static_cast<double>(i) * h, static_cast<double>(i + 1) * h);
  }
  FVParams p;
  p.t_end = 1.0;
  p.cfl = 0.8;
  const auto r = run_fv(fg, q, p).back();
  double err = 0;
  for (std::size_t i = 0; i < n; ++i) {
    err += std::abs(r.p[i] - avg(static_cast<double>(i) * h - 1.0,
                                 static_cast<double>(i + 1) * h - 1.0)) * h;
  }
  return err;
}

double fv_reflection(double Zl, double Zr) {
  const std::size_t n = 256;
  Grid2D g;
  g.nx = 1;
  g.ny = n;
  g.cell_centered = true;
  std::vector<double> K(n), rho(n);
  for (std::size_t j = 0; j < n; ++j) K[j] = rho[j] = g.y(j) < 0.5 ? Zl : Zr;
  const FVGrid fg(g, K, rho);
  WaveField q(g);
  double incident = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double y = g.y(j) - 0.25;
    q.p[j] = std::exp(-y * y / (2 * 0.03 * 0.03));
    q.v[j] = q.p[j] / Zl;
    incident += q.p[j];
  }
  FVParams p;
  p.t_end = 0.5;
  const auto r = run_fv(fg, q, p).back();
  double reflected = 0;
  for (std::size_t j = 0; j < n / 2; ++j) reflected += r.p[j];
  return reflected / incident;
}

void criterion7(Outcome& o) {
  const auto m = Medium::sinusoidal(5.0 / 8, 5.0 / 2);
  const auto c = chain(m);
  const auto avg = averages(m);
  Grid2D g;
  g.nx = g.ny = 128;
  g.Lx = g.Ly = 80;
  const auto init = band_limited(g);

  EffSolverParams p;
  p.t_end = 10;
  const auto r0 = run(c, avg, p, init).back();
  const double e0 = effective_energy(init, avg);
  const double drift = std::abs(effective_energy(r0, avg) - e0) / e0;
  o.detail << " energy drift " << drift;
  o.check(drift <= 1e-8, "order-0 energy");

  double worst = 0;
  for (int order : {0, 2, 4}) {
    p.order = order;
    const auto r = run(c, avg, p, init).back();
    const auto e = propagate_exact(c, avg, SystemKind::full2d, order, init, p.t_end);
    for (std::size_t k = 0; k < g.size(); ++k) {
      worst = std::max({worst, std::abs(r.p[k] - e.p[k]), std::abs(r.u[k] - e.u[k]),
                        std::abs(r.v[k] - e.v[k])});
    }
  }
  o.detail << ", RK4 vs exact " << worst;
  o.check(worst <= 1e-8, "RK4 vs exact propagator");

  const double a = fv_advection_error(128), b = fv_advection_error(256);
  const double rate = std::log2(a / b);
  o.detail << ", FV order " << rate;
  o.check(rate >= 1.8, "FV convergence order");

  const double Zl = 1.0, Zr = 3.0;
  const double R = fv_reflection(Zl, Zr), want = (Zr - Zl) / (Zr + Zl);
  o.detail << ", reflection " << R << " vs " << want;
  o.check(std::abs(R - want) <= 0.01 * std::abs(want), "reflection coefficient");
}

void criterion8(Outcome& o) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(-10, 10);
  const std::vector<double> breaks{0.0, 0.25, 0.75, 1.0};
  double worst = 0;
  for (int n = 0; n < 1000; ++n) {
    // Two-layer functions: band B wraps around [0, 1/4) and [3/4, 1).
    const double fa = U(rng), fb = U(rng), ga = U(rng), gb = U(rng);
    const double fv[] = {fb, fa, fb};
    const double gv[] = {gb, ga, gb};
    const auto f = PiecewisePolynomial::piecewise_constant(breaks, fv);
    const auto g = PiecewisePolynomial::piecewise_constant(breaks, gv);
    worst = std::max(worst, std::abs((f * g.zero_mean_antiderivative()).mean()));
  }
  o.detail << " max |<f[[g]]>| " << worst;
  o.check(worst <= 1e-12, "<f[[g]]>");

  std::mt19937_64 rng2(88);
  std::uniform_real_distribution<double> P(0.1, 10);
  std::vector<double> ys;
  for (int i = 0; i < 1000; ++i) ys.push_back((i + 0.5) / 1000.0);
  double abc = 0, means = 0;
  std::vector<Medium> media{Medium::sinusoidal(5.0 / 8, 5.0 / 2)};
  for (int n = 0; n < 50; ++n) {
    const auto m = Medium::piecewise(P(rng2), P(rng2), P(rng2), P(rng2));
    media.push_back(m);
    const auto t = solve_fastvars(m, 1);
    const auto cf = closed_form_fastvars_layered(m, ys);
    const auto A = t.sample(FastVar::A, ys), B = t.sample(FastVar::B, ys),
               C = t.sample(FastVar::C, ys);
    for (std::size_t i = 0; i < ys.size(); ++i) {
      abc = std::max({abc, std::abs(A[i] - cf.A[i]), std::abs(B[i] - cf.B[i]),
                      std::abs(C[i] - cf.C[i])});
    }
  }
  o.detail << ", A/B/C closed-form diff " << abc;
  o.check(abc <= 1e-10, "A, B, C closed forms");
  for (const auto& m : media) {
    const auto t = solve_fastvars(m, 6);
    for (auto v : kAllFastVars) means = std::max(means, std::abs(t.mean(v)));
  }
  o.detail << ", max |mean| " << means;
  o.check(means <= 1e-10, "zero means");
}

const std::array<std::pair<const char*, void (*)(Outcome&)>, 8> kCriteria{{
    {"sinusoidal coefficient table", criterion1},
    {"closed-form oracle equivalence", criterion2},
    {"dual vanishing property", criterion3},
    {"combined leading dispersion", criterion4},
    {"anisotropic front speeds", criterion5},
    {"per-order convergence of homogenized solutions", criterion6},
    {"solver self-checks", criterion7},
    {"fast-variable suite", criterion8},
}};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (!std::strcmp(argv[i], "--keep-artifacts") && i + 1 < argc) {
      g_artifacts = argv[++i];
    } else {
      std::cerr << "usage: " << argv[0] << " [--criterion N] [--keep-artifacts DIR]\n";
      return 2;
    }
  }
  if (only < 0 || only > 8) {
    std::cerr << "criterion must be 1..8\n";
    return 2;
  }
  bool all_pass = true;
  for (int n = 1; n <= 8; ++n) {
    if (only && n != only) continue;
    Outcome o;
    try {
      kCriteria[n - 1].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [error: " << e.what() << "]";
    }
    all_pass = all_pass && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << " ("
              << kCriteria[n - 1].first << "):" << o.detail.str() << std::endl;
  }
  return all_pass ? 0 : 1;
}
