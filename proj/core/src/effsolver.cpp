#include "layerwave/effsolver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "layerwave/error.hpp"
#include "layerwave/fastfield.hpp"
#include "layerwave/spectral.hpp"

namespace layerwave {

namespace {

bool power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

// Maps spectral slots of a real field to wavenumbers.
class ModeLayout {
 public:
  explicit ModeLayout(const Grid2D& g)
      : grid_(g), fft_(g.nx == 1 ? g.ny : g.nx, g.nx == 1 ? 1 : g.ny) {
    const double two_pi = 2.0 * std::numbers::pi;
    const std::size_t n = fft_.spectral_size();
    kx_.resize(n);
    ky_.resize(n);
    nyq_x_.assign(n, false);
    nyq_y_.assign(n, false);
    if (g.nx == 1) {
      for (std::size_t i = 0; i < n; ++i) {
        kx_[i] = 0.0;
        ky_[i] = two_pi * static_cast<double>(i) / g.Ly;
        nyq_y_[i] = g.ny % 2 == 0 && i == g.ny / 2;
      }
      return;
    }
    const std::size_t nxs = fft_.nx_spectral();
    for (std::size_t j = 0; j < g.ny; ++j) {
      for (std::size_t i = 0; i < nxs; ++i) {
        const std::size_t s = j * nxs + i;
        kx_[s] = two_pi * static_cast<double>(i) / g.Lx;
        ky_[s] = g.ny == 1 ? 0.0
                           : two_pi * static_cast<double>(wave_index(j, g.ny)) / g.Ly;
        nyq_x_[s] = g.nx % 2 == 0 && i == g.nx / 2;
        nyq_y_[s] = g.ny > 1 && g.ny % 2 == 0 && j == g.ny / 2;
      }
    }
  }

  std::size_t size() const { return kx_.size(); }
  double kx(std::size_t s) const { return kx_[s]; }
  double ky(std::size_t s) const { return ky_[s]; }
  bool nyquist_x(std::size_t s) const { return nyq_x_[s]; }
  bool nyquist_y(std::size_t s) const { return nyq_y_[s]; }

  std::vector<Complex> forward(const std::vector<double>& f) {
    std::vector<Complex> out(fft_.spectral_size());
    fft_.forward(f, out);
    return out;
  }
  std::vector<double> inverse(const std::vector<Complex>& s) {
    std::vector<double> out(grid_.size());
    fft_.inverse(s, out);
    return out;
  }

 private:
  Grid2D grid_;
  RealFFT fft_;
  std::vector<double> kx_, ky_;
  std::vector<bool> nyq_x_, nyq_y_;
};

// Mode symbol with odd-derivative terms removed on Nyquist rows/columns.
ModeMatrix grid_mode(const ModeLayout& L, std::size_t s, const HomogCoefficients& c,
                     const MediumAverages& avg, SystemKind system, int order) {
  ModeMatrix m = mode_matrix(c, avg, system, L.kx(s), L.ky(s), order);
  if (L.nyquist_x(s)) m.a = m.c = 0.0;
  if (L.nyquist_y(s)) m.b = m.d = 0.0;
  return m;
}

struct SpectralState {
  std::vector<Complex> p, u, v;
};

// Weights s1, s2 with exp(M t) = I + s1 M + s2 M^2 when M^3 = l2 M.
struct PropagatorWeights {
  Complex s1, s2;
  bool series;
};

PropagatorWeights propagator_weights(Complex l2, double t) {
  const Complex lt2 = l2 * t * t;
  if (std::abs(lt2) < 1e-6) {
    return {t * (1.0 + lt2 / 6.0 + lt2 * lt2 / 120.0),
            t * t * (0.5 + lt2 / 24.0 + lt2 * lt2 / 720.0), true};
  }
  const Complex lam = std::sqrt(l2);
  return {std::sinh(lam * t) / lam, (std::cosh(lam * t) - 1.0) / l2, false};
}

std::string describe_mode(const ModeLayout& L, std::size_t s) {
  std::ostringstream os;
  os << "mode (kx=" << L.kx(s) << ", ky=" << L.ky(s) << ")";
  return os.str();
}

}  // namespace

void validate_field(SystemKind system, const Grid2D& g) {
  if (!power_of_two(g.nx) || !power_of_two(g.ny)) {
    throw InvalidParameter("effective solver grid sizes must be powers of two");
  }
  if (!(g.Lx > 0) || !(g.Ly > 0)) {
    throw InvalidParameter("effective solver domain lengths must be positive");
  }
  switch (system) {
    case SystemKind::full2d:
      if (g.nx < 2 || g.ny < 2) {
        throw InvalidParameter("2d system needs nx >= 2 and ny >= 2");
      }
      break;
    case SystemKind::transverse1d:
      if (g.ny != 1 || g.nx < 2) {
        throw InvalidParameter("transverse1d system needs ny == 1 and nx >= 2");
      }
      break;
    case SystemKind::normal1d:
      if (g.nx != 1 || g.ny < 2) {
        throw InvalidParameter("normal1d system needs nx == 1 and ny >= 2");
      }
      break;
  }
}

WaveField rhs(const WaveField& state, const HomogCoefficients& c,
              const MediumAverages& avg, SystemKind system, int order) {
  validate_field(system, state.grid);
  ModeLayout L(state.grid);
  const auto p = L.forward(state.p);
  const auto u = L.forward(state.u);
  const auto v = L.forward(state.v);
  std::vector<Complex> dp(L.size()), du(L.size()), dv(L.size());
  for (std::size_t s = 0; s < L.size(); ++s) {
    const ModeMatrix m = grid_mode(L, s, c, avg, system, order);
    dp[s] = m.a * u[s] + m.b * v[s];
    du[s] = m.c * p[s];
    dv[s] = m.d * p[s];
  }
  WaveField out(state.grid, state.t);
  out.p = L.inverse(dp);
  out.u = L.inverse(du);
  out.v = L.inverse(dv);
  return out;
}

std::vector<WaveField> run(const HomogCoefficients& c, const MediumAverages& avg,
                           const EffSolverParams& params, const WaveField& initial,
                           EffRunInfo* info) {
  validate_field(params.system, initial.grid);
  if (!(params.t_end > initial.t)) {
    throw InvalidParameter("effective run: t_end must exceed the initial time");
  }
  if (!(params.safety > 0)) throw InvalidParameter("effective run: safety must be > 0");

  ModeLayout L(initial.grid);
  const std::size_t n = L.size();
  std::vector<ModeMatrix> M(n);
  EffRunInfo stats;
  double max_omega = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const double k = std::hypot(L.kx(s), L.ky(s));
    if (params.order > 0 && params.spectral_cutoff > 0 && k > params.spectral_cutoff) {
      M[s] = {};
      ++stats.frozen_modes;
      continue;
    }
    M[s] = grid_mode(L, s, c, avg, params.system, params.order);
    const double w2 = -M[s].lambda_squared().real();
    if (w2 < 0.0) {
      throw SolverInstability("effective system of order " +
                              std::to_string(params.order) +
                              " is ill-posed at " + describe_mode(L, s) +
                              ": omega^2 = " + std::to_string(w2));
    }
    max_omega = std::max(max_omega, std::sqrt(w2));
  }
  const double dt_max = max_omega > 0 ? params.safety * 2.8 / max_omega
                                      : params.t_end - initial.t;
  stats.max_omega = max_omega;

  std::vector<double> times;
  for (double t : params.output_times) {
    if (t > initial.t && t < params.t_end) times.push_back(t);
  }
  times.push_back(params.t_end);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  SpectralState q{L.forward(initial.p), L.forward(initial.u), L.forward(initial.v)};
  SpectralState k1 = q, k2 = q, k3 = q, k4 = q, tmp = q;
  auto eval = [&](const SpectralState& x, SpectralState& dx) {
    for (std::size_t s = 0; s < n; ++s) {
      const ModeMatrix& m = M[s];
      dx.p[s] = m.a * x.u[s] + m.b * x.v[s];
      dx.u[s] = m.c * x.p[s];
      dx.v[s] = m.d * x.p[s];
    }
  };
  auto axpy = [&](const SpectralState& x, const SpectralState& d, double h,
                  SpectralState& y) {
    for (std::size_t s = 0; s < n; ++s) {
      y.p[s] = x.p[s] + h * d.p[s];
      y.u[s] = x.u[s] + h * d.u[s];
      y.v[s] = x.v[s] + h * d.v[s];
    }
  };

  std::vector<WaveField> out;
  double t = initial.t;
  for (double target : times) {
    const double span = target - t;
    const auto steps = static_cast<std::size_t>(std::ceil(span / dt_max - 1e-12));
    const double h = span / static_cast<double>(std::max<std::size_t>(steps, 1));
    stats.dt = h;
    for (std::size_t step = 0; step < steps; ++step) {
      eval(q, k1);
      axpy(q, k1, 0.5 * h, tmp);
      eval(tmp, k2);
      axpy(q, k2, 0.5 * h, tmp);
      eval(tmp, k3);
      axpy(q, k3, h, tmp);
      eval(tmp, k4);
      for (std::size_t s = 0; s < n; ++s) {
        q.p[s] += h / 6.0 * (k1.p[s] + 2.0 * k2.p[s] + 2.0 * k3.p[s] + k4.p[s]);
        q.u[s] += h / 6.0 * (k1.u[s] + 2.0 * k2.u[s] + 2.0 * k3.u[s] + k4.u[s]);
        q.v[s] += h / 6.0 * (k1.v[s] + 2.0 * k2.v[s] + 2.0 * k3.v[s] + k4.v[s]);
        if (!std::isfinite(std::abs(q.p[s])) || !std::isfinite(std::abs(q.u[s])) ||
            !std::isfinite(std::abs(q.v[s]))) {
          throw SolverInstability("non-finite state at t=" +
                                  std::to_string(t + h * static_cast<double>(step + 1)) +
                                  " in " + describe_mode(L, s));
        }
      }
      ++stats.steps;
    }
    t = target;
    WaveField snap(initial.grid, t);
    snap.p = L.inverse(q.p);
    snap.u = L.inverse(q.u);
    snap.v = L.inverse(q.v);
    out.push_back(std::move(snap));
  }
  if (info) *info = stats;
  return out;
}

ModePropagator exact_mode_propagator(const HomogCoefficients& c,
                                     const MediumAverages& avg, SystemKind system,
                                     double kx, double ky, int order, double t) {
  const ModeMatrix m = mode_matrix(c, avg, system, kx, ky, order);
  const Complex l2 = m.lambda_squared();
  const auto [s1, s2, series] = propagator_weights(l2, t);
  ModePropagator out;
  out.series = series;
  // M and M^2 for M = [[0,a,b],[c,0,0],[d,0,0]].
  const std::array<Complex, 9> M1{0.0, m.a, m.b, m.c, 0.0, 0.0, m.d, 0.0, 0.0};
  const std::array<Complex, 9> M2{l2, 0.0, 0.0, 0.0, m.c * m.a, m.c * m.b,
                                  0.0, m.d * m.a, m.d * m.b};
  for (std::size_t r = 0; r < 9; ++r) {
    const Complex id = (r % 4 == 0) ? 1.0 : 0.0;
    out.m[r] = id + s1 * M1[r] + s2 * M2[r];
  }
  return out;
}

WaveField propagate_exact(const HomogCoefficients& c, const MediumAverages& avg,
                          SystemKind system, int order, const WaveField& initial,
                          double t, double spectral_cutoff) {
  validate_field(system, initial.grid);
  ModeLayout L(initial.grid);
  auto p = L.forward(initial.p);
  auto u = L.forward(initial.u);
  auto v = L.forward(initial.v);
  for (std::size_t s = 0; s < L.size(); ++s) {
    if (order > 0 && spectral_cutoff > 0 &&
        std::hypot(L.kx(s), L.ky(s)) > spectral_cutoff) {
      continue;
    }
    ModeMatrix m = grid_mode(L, s, c, avg, system, order);
    const Complex l2 = m.lambda_squared();
    const auto w = propagator_weights(l2, t);
    const Complex P = p[s], U = u[s], V = v[s];
    const Complex MP = m.a * U + m.b * V;
    p[s] = P + w.s1 * MP + w.s2 * l2 * P;
    u[s] = U + w.s1 * m.c * P + w.s2 * m.c * MP;
    v[s] = V + w.s1 * m.d * P + w.s2 * m.d * MP;
  }
  WaveField out(initial.grid, initial.t + t);
  out.p = L.inverse(p);
  out.u = L.inverse(u);
  out.v = L.inverse(v);
  return out;
}

double effective_energy(const WaveField& f, const MediumAverages& avg) {
  double e = 0.0;
  for (std::size_t k = 0; k < f.grid.size(); ++k) {
    e += f.p[k] * f.p[k] / avg.K_h + avg.rho_h * f.u[k] * f.u[k] +
         avg.rho_m * f.v[k] * f.v[k];
  }
  return e * f.grid.dx() * f.grid.dy();
}

std::vector<double> reconstruct_fast_scale_u(const WaveField& mean_field,
                                             const Medium& medium,
                                             bool include_first_correction,
                                             std::span<const double> yhats) {
  const auto avg = averages(medium);
  const auto& g = mean_field.grid;
  std::vector<double> uy;
  std::vector<double> Cvals(yhats.size(), 0.0);
  if (include_first_correction) {
    uy = spectral_derivative(mean_field.u, g.nx, g.ny, g.Ly, Axis::y, 1);
    const auto table = solve_fastvars(medium, 1);
    Cvals = table.sample(FastVar::C, yhats);
  }
  std::vector<double> out;
  out.reserve(yhats.size() * g.size());
  for (std::size_t h = 0; h < yhats.size(); ++h) {
    const double w = avg.rho_h / medium.sample(yhats[h]).rho;
    for (std::size_t k = 0; k < g.size(); ++k) {
      double val = w * mean_field.u[k];
      if (include_first_correction) val += w * Cvals[h] * uy[k];
      out.push_back(val);
    }
  }
  return out;
}

}  // namespace layerwave
