#include "layerwave/directsolver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "layerwave/error.hpp"

namespace layerwave {

namespace {

struct LineScratch {
  std::vector<double> a1, a2, fp, fw;
  void resize(std::size_t n) {
    a1.resize(n);
    a2.resize(n);
    fp.resize(n);
    fw.resize(n);
  }
};

// theta for a wave of strength a on eigenvector (z, 1) against the upwind
// wave of strength a_up on (z_up, 1).
double ratio(double a, double z, double a_up, double z_up) {
  const double denom = a * a * (z * z + 1.0);
  if (denom == 0.0) return 0.0;
  return a_up * a * (z_up * z + 1.0) / denom;
}

// Updates one periodic line of n cells (spacing `stride` in memory) for
// the 1D system p_t + K w_s = 0, rho w_t + p_s = 0. Interface I sits on
// the left of cell I.
void sweep_line(double* p, double* w, const double* Z, const double* c,
                std::size_t n, std::size_t stride, double nu, Limiter lim,
                LineScratch& s) {
  auto at = [stride](std::size_t k) { return k * stride; };
  for (std::size_t I = 0; I < n; ++I) {
    const std::size_t l = at(I == 0 ? n - 1 : I - 1), r = at(I);
    const double dp = p[r] - p[l];
    const double dw = w[r] - w[l];
    const double den = Z[l] + Z[r];
    s.a1[I] = (-dp + Z[r] * dw) / den;
    s.a2[I] = (dp + Z[l] * dw) / den;
  }
  for (std::size_t I = 0; I < n; ++I) {
    const std::size_t Im = I == 0 ? n - 1 : I - 1;
    const std::size_t Ip = I + 1 == n ? 0 : I + 1;
    const double Zl = Z[at(Im)], Zr = Z[at(I)];
    const double cl = c[at(Im)], cr = c[at(I)];
    double b1 = s.a1[I], b2 = s.a2[I];
    if (lim != Limiter::none) {
      // The left-going wave is upwinded from interface I+1 (left state Z[I]),
      // the right-going wave from interface I-1 (right state Z[I-1]).
      b1 *= limit(lim, ratio(s.a1[I], -Zl, s.a1[Ip], -Zr));
      b2 *= limit(lim, ratio(s.a2[I], Zr, s.a2[Im], Zl));
    }
    const double g1 = 0.5 * cl * (1.0 - nu * cl) * b1;
    const double g2 = 0.5 * cr * (1.0 - nu * cr) * b2;
    s.fp[I] = -g1 * Zl + g2 * Zr;
    s.fw[I] = g1 + g2;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ip = i + 1 == n ? 0 : i + 1;
    const double Zi = Z[at(i)], ci = c[at(i)];
    // A^+ dQ at the left interface and A^- dQ at the right interface, both
    // using this cell's eigenvectors.
    const double apdq_p = ci * s.a2[i] * Zi, apdq_w = ci * s.a2[i];
    const double amdq_p = ci * s.a1[ip] * Zi, amdq_w = -ci * s.a1[ip];
    p[at(i)] -= nu * (apdq_p + amdq_p) + nu * (s.fp[ip] - s.fp[i]);
    w[at(i)] -= nu * (apdq_w + amdq_w) + nu * (s.fw[ip] - s.fw[i]);
  }
}

void sweep_x(const FVGrid& g, WaveField& q, double dt, Limiter lim, LineScratch& s) {
  const auto& gr = g.grid();
  const double nu = dt / gr.dx();
  s.resize(gr.nx);
  for (std::size_t j = 0; j < gr.ny; ++j) {
    const std::size_t o = j * gr.nx;
    sweep_line(q.p.data() + o, q.u.data() + o, g.Z().data() + o, g.c().data() + o,
               gr.nx, 1, nu, lim, s);
  }
}

void sweep_y(const FVGrid& g, WaveField& q, double dt, Limiter lim, LineScratch& s) {
  const auto& gr = g.grid();
  const double nu = dt / gr.dy();
  s.resize(gr.ny);
  for (std::size_t i = 0; i < gr.nx; ++i) {
    sweep_line(q.p.data() + i, q.v.data() + i, g.Z().data() + i, g.c().data() + i,
               gr.ny, gr.nx, nu, lim, s);
  }
}

bool all_finite(const WaveField& f) {
  for (std::size_t k = 0; k < f.p.size(); ++k) {
    if (!std::isfinite(f.p[k] + f.u[k] + f.v[k])) return false;
  }
  return true;
}

}  // namespace

std::string_view name(Limiter l) {
  switch (l) {
    case Limiter::none:
      return "none";
    case Limiter::minmod:
      return "minmod";
    case Limiter::superbee:
      return "superbee";
    case Limiter::mc:
      return "mc";
  }
  return "?";
}

Limiter parse_limiter(std::string_view s) {
  if (s == "none") return Limiter::none;
  if (s == "minmod") return Limiter::minmod;
  if (s == "superbee") return Limiter::superbee;
  if (s == "mc") return Limiter::mc;
  throw InvalidParameter("unknown limiter '" + std::string(s) +
                         "' (expected none, minmod, superbee or mc)");
}

double limit(Limiter l, double t) {
  switch (l) {
    case Limiter::none:
      return 1.0;
    case Limiter::minmod:
      return std::max(0.0, std::min(1.0, t));
    case Limiter::superbee:
      return std::max({0.0, std::min(1.0, 2.0 * t), std::min(2.0, t)});
    case Limiter::mc:
      return std::max(0.0, std::min({0.5 * (1.0 + t), 2.0, 2.0 * t}));
  }
  return 1.0;
}

FVGrid::FVGrid(const Grid2D& grid, std::vector<double> K, std::vector<double> rho)
    : grid_(grid), K_(std::move(K)), rho_(std::move(rho)) {
  if (grid_.nx < 1 || grid_.ny < 1) throw InvalidParameter("FVGrid: empty grid");
  if (K_.size() != grid_.size() || rho_.size() != grid_.size()) {
    throw InvalidParameter("FVGrid: material arrays do not match the grid");
  }
  Z_.resize(K_.size());
  c_.resize(K_.size());
  for (std::size_t k = 0; k < K_.size(); ++k) {
    if (!(K_[k] > 0) || !(rho_[k] > 0)) {
      throw InvalidParameter("FVGrid: nonpositive material in cell " + std::to_string(k));
    }
    Z_[k] = std::sqrt(K_[k] * rho_[k]);
    c_[k] = std::sqrt(K_[k] / rho_[k]);
    c_max_ = std::max(c_max_, c_[k]);
  }
}

FVGrid FVGrid::from_medium(const Medium& medium, const Grid2D& grid) {
  const double periods = grid.Ly / Medium::kPeriod;
  if (std::abs(periods - std::round(periods)) > 1e-9 || std::round(periods) < 1) {
    throw ConfigError("FV domain height " + std::to_string(grid.Ly) +
                      " is not an integer number of periods");
  }
  const double per = static_cast<double>(grid.ny) / std::round(periods);
  if (std::abs(per - std::round(per)) > 1e-9) {
    throw ConfigError("FV grid must hold an integer number of cells per period");
  }
  const auto cells = static_cast<long>(std::round(per));
  if (cells < 8 || cells % 2 != 0) {
    throw ConfigError("FV resolution must be an even number >= 8 of cells per period");
  }
  if (medium.kind() == MediumKind::piecewise && cells % 4 != 0) {
    throw ConfigError("piecewise media need a multiple of 4 cells per period "
                      "so that layer interfaces fall on cell edges");
  }
  Grid2D g = grid;
  g.cell_centered = true;
  std::vector<double> K(g.size()), rho(g.size());
  for (std::size_t j = 0; j < g.ny; ++j) {
    const auto m = medium.sample(g.y(j));
    std::fill_n(K.begin() + static_cast<std::ptrdiff_t>(j * g.nx), g.nx, m.K);
    std::fill_n(rho.begin() + static_cast<std::ptrdiff_t>(j * g.nx), g.nx, m.rho);
  }
  return FVGrid(g, std::move(K), std::move(rho));
}

RiemannSolution riemann_acoustics(std::array<double, 2> ql, std::array<double, 2> qr,
                                  double Z_l, double Z_r, double c_l, double c_r) {
  if (!(Z_l > 0) || !(Z_r > 0) || !(c_l > 0) || !(c_r > 0)) {
    throw InvalidParameter("riemann_acoustics: impedances and speeds must be positive");
  }
  const double dp = qr[0] - ql[0];
  const double dw = qr[1] - ql[1];
  RiemannSolution s{};
  s.alpha_left = (-dp + Z_r * dw) / (Z_l + Z_r);
  s.alpha_right = (dp + Z_l * dw) / (Z_l + Z_r);
  s.wave_left = {-Z_l * s.alpha_left, s.alpha_left};
  s.wave_right = {Z_r * s.alpha_right, s.alpha_right};
  s.speed_left = -c_l;
  s.speed_right = c_r;
  s.amdq = {s.speed_left * s.wave_left[0], s.speed_left * s.wave_left[1]};
  s.apdq = {s.speed_right * s.wave_right[0], s.speed_right * s.wave_right[1]};
  return s;
}

double fv_time_step(const FVGrid& grid, double cfl) {
  if (!(cfl > 0) || cfl > 1) throw InvalidParameter("CFL must lie in (0, 1]");
  const auto& g = grid.grid();
  double h = g.dx();
  if (g.ny > 1) h = std::min(h, g.dy());
  if (g.nx == 1) h = g.dy();
  return cfl * h / grid.c_max();
}

void step_fv(const FVGrid& grid, WaveField& q, double dt, Limiter lim, bool x_first) {
  thread_local LineScratch scratch;
  const auto& g = grid.grid();
  const bool do_x = g.nx > 1, do_y = g.ny > 1;
  if (x_first) {
    if (do_x) sweep_x(grid, q, dt, lim, scratch);
    if (do_y) sweep_y(grid, q, dt, lim, scratch);
  } else {
    if (do_y) sweep_y(grid, q, dt, lim, scratch);
    if (do_x) sweep_x(grid, q, dt, lim, scratch);
  }
  q.t += dt;
}

std::vector<WaveField> run_fv(const FVGrid& grid, const WaveField& initial,
                              const FVParams& params, FVRunInfo* info) {
  if (initial.grid.nx != grid.grid().nx || initial.grid.ny != grid.grid().ny) {
    throw InvalidParameter("run_fv: initial field does not match the grid");
  }
  if (!(params.t_end > initial.t)) throw InvalidParameter("run_fv: t_end <= t0");
  const double dt_max = fv_time_step(grid, params.cfl);

  std::vector<double> times;
  for (double t : params.output_times) {
    if (t > initial.t && t < params.t_end) times.push_back(t);
  }
  times.push_back(params.t_end);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  FVRunInfo stats;
  stats.energy_initial = acoustic_energy(grid, initial);
  WaveField q = initial;
  q.grid = grid.grid();
  std::vector<WaveField> out;
  bool x_first = true;
  for (double target : times) {
    const double span = target - q.t;
    const auto steps = static_cast<std::size_t>(std::ceil(span / dt_max - 1e-12));
    const double dt = span / static_cast<double>(std::max<std::size_t>(steps, 1));
    stats.dt = dt;
    for (std::size_t n = 0; n < steps; ++n) {
      step_fv(grid, q, dt, params.limiter, x_first);
      x_first = !x_first;
      ++stats.steps;
      if (stats.steps % 16 == 0 && !all_finite(q)) {
        throw SolverInstability("finite-volume state became non-finite at t=" +
                                std::to_string(q.t));
      }
    }
    if (!all_finite(q)) {
      throw SolverInstability("finite-volume state became non-finite at t=" +
                              std::to_string(q.t));
    }
    q.t = target;
    out.push_back(q);
  }
  stats.energy_final = acoustic_energy(grid, q);
  if (info) *info = stats;
  return out;
}

double acoustic_energy(const FVGrid& grid, const WaveField& f) {
  const auto K = grid.K();
  const auto rho = grid.rho();
  double e = 0.0;
  for (std::size_t k = 0; k < f.p.size(); ++k) {
    e += 0.5 * f.p[k] * f.p[k] / K[k] +
         0.5 * rho[k] * (f.u[k] * f.u[k] + f.v[k] * f.v[k]);
  }
  return e * f.grid.dx() * f.grid.dy();
}

Profile y_average(const WaveField& f) {
  const auto& g = f.grid;
  Profile pr;
  pr.x.resize(g.nx);
  pr.p.assign(g.nx, 0.0);
  pr.u.assign(g.nx, 0.0);
  for (std::size_t i = 0; i < g.nx; ++i) pr.x[i] = g.x(i);
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      pr.p[i] += f.p[g.index(i, j)];
      pr.u[i] += f.u[g.index(i, j)];
    }
  }
  const double inv = 1.0 / static_cast<double>(g.ny);
  for (std::size_t i = 0; i < g.nx; ++i) {
    pr.p[i] *= inv;
    pr.u[i] *= inv;
  }
  return pr;
}

}  // namespace layerwave
