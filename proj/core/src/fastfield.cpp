#include "layerwave/fastfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "layerwave/error.hpp"

namespace layerwave {

namespace {

constexpr std::size_t kMinTableSamples = 64;

const std::vector<double>& layer_breaks() {
  static const std::vector<double> b{0.0, 0.25, 0.75, 1.0};
  return b;
}

std::size_t idx(FastVar v) { return static_cast<std::size_t>(v); }

template <class Fn>
Fn zma(const Fn& f) {
  return f.zero_mean_antiderivative();
}

template <class Fn>
double avg(const Fn& a, const Fn& b) {
  return (a * b).mean();
}

// Composes the cell functions order by order.
template <class Fn>
void build_chain(FastVarChain<Fn>& chain, int max_order) {
  const auto& m = chain.materials;
  const double Kh = m.avg.K_h;
  const double rh = m.avg.rho_h;
  const double rm = m.avg.rho_m;
  const Fn kk = m.K_inv * Kh;       // K^-1 K_h
  const Fn rr = m.rho_inv * rh;     // rho^-1 rho_h
  const Fn rho_m = m.rho * (1.0 / rm);  // rho rho_m^-1
  const Fn rho_h = m.rho * (1.0 / rh);  // rho rho_h^-1
  auto& v = chain.vars;
  auto set = [&](FastVar k, Fn f) { v[idx(k)] = std::move(f); };
  auto get = [&](FastVar k) -> const Fn& { return *v[idx(k)]; };

  set(FastVar::A, zma(kk - rr));
  set(FastVar::B, zma(kk));
  set(FastVar::C, zma(rho_m));
  if (max_order < 2) return;

  const Fn& A = get(FastVar::A);
  const Fn& B = get(FastVar::B);
  const Fn& C = get(FastVar::C);
  set(FastVar::D, zma(kk * C - rr * C - A));
  set(FastVar::E, zma(kk * C - B));
  set(FastVar::F, zma(rho_m * B - C));
  set(FastVar::H, zma(rho_h * A));
  if (max_order < 3) return;

  const Fn& D = get(FastVar::D);
  const Fn& E = get(FastVar::E);
  const Fn& F = get(FastVar::F);
  const Fn& H = get(FastVar::H);
  const double kF = avg(m.K_inv, F);
  const double kH = avg(m.K_inv, H);
  const double rF = avg(m.rho_inv, F);
  const double rH = avg(m.rho_inv, H);
  const double pE = avg(m.rho, E);
  const double pD = avg(m.rho, D);
  set(FastVar::I, zma(kk * (F - Kh * kF) - rr * (F - rh * rF) - D));
  set(FastVar::J, zma(kk * (H - Kh * kH) - rr * (H - rh * rH)));
  set(FastVar::L, zma(kk * (H - Kh * kH)));
  set(FastVar::M, zma(kk * (F - Kh * kF) - E));
  set(FastVar::N, zma(rho_m * (E - pE / rm) - F));
  set(FastVar::P, zma(rho_h * (D - pD / rm) - H));
  if (max_order < 4) return;

  const Fn& I = get(FastVar::I);
  const Fn& J = get(FastVar::J);
  const Fn& L = get(FastVar::L);
  const Fn& M = get(FastVar::M);
  const Fn& N = get(FastVar::N);
  const Fn& P = get(FastVar::P);
  set(FastVar::Q, zma(kk * (N - C * (Kh * kF)) - rr * (N - C * (rh * rF)) - I));
  set(FastVar::R, zma(kk * (P - C * (Kh * kH)) - rr * (P - C * (rh * rH)) - J));
  set(FastVar::S, zma(kk * (P - C * (Kh * kH)) - L));
  set(FastVar::T, zma(kk * (N - C * (Kh * kF)) - M));
  set(FastVar::U, zma(rho_m * (M - B * (pE / rm)) - N));
  set(FastVar::V, zma(m.rho * A * rF + rho_h * I + rho_m * (L - B * (pD / rh)) - P));
  set(FastVar::W, zma(m.rho * A * rH + rho_h * J));
  if (max_order < 6) return;

  const Fn& W = get(FastVar::W);
  const double kW = avg(m.K_inv, W);
  const double rW = avg(m.rho_inv, W);
  const Fn kpart = W - Kh * kW - H * (Kh * kH) + Kh * Kh * kH * kH;
  const Fn rpart = W - rh * rW - H * (rh * rH) + rh * rh * rH * rH;
  set(FastVar::Atilde, zma(kk * kpart - rr * rpart));
  const Fn& At = get(FastVar::Atilde);
  set(FastVar::Btilde, zma(m.rho * A * rW + m.rho * J * rH + rho_h * At));
}

template <class Fn>
const Fn& weight_fn(const MaterialFunctions<Fn>& m, Weight w) {
  switch (w) {
    case Weight::K_inv:
      return m.K_inv;
    case Weight::rho:
      return m.rho;
    case Weight::rho_inv:
      return m.rho_inv;
    case Weight::one:
      break;
  }
  return m.K_inv;
}

}  // namespace

std::string_view name(FastVar v) {
  static constexpr std::array<std::string_view, kFastVarCount> names = {
      "A", "B", "C", "D", "E", "F", "H", "I", "J", "L", "M",
      "N", "P", "Q", "R", "S", "T", "U", "V", "W", "Atilde", "Btilde"};
  return names[idx(v)];
}

int order_of(FastVar v) {
  if (v <= FastVar::C) return 1;
  if (v <= FastVar::H) return 2;
  if (v <= FastVar::P) return 3;
  if (v <= FastVar::W) return 4;
  return 6;
}

double AssumptionResiduals::max_abs() const {
  return std::max({std::abs(K_inv_C), std::abs(rho_inv_C), std::abs(rho_A),
                   std::abs(rho_B)});
}

MaterialFunctions<PiecewisePolynomial> piecewise_materials(const Medium& medium) {
  const auto& L = medium.layers();
  const auto& b = layer_breaks();
  auto pc = [&](double a, double bb) {
    const std::array<double, 3> vals{bb, a, bb};
    return PiecewisePolynomial::piecewise_constant(b, vals);
  };
  return {pc(1.0 / L.K_A, 1.0 / L.K_B), pc(L.rho_A, L.rho_B),
          pc(1.0 / L.rho_A, 1.0 / L.rho_B), averages(medium)};
}

MaterialFunctions<GridFunction> grid_materials(const Medium& medium,
                                               std::size_t n_samples) {
  std::size_t n = n_samples;
  if (medium.kind() == MediumKind::tabulated) {
    n = medium.table_K().size();
    if (n < kMinTableSamples) {
      throw InvalidParameter("tabulated medium has " + std::to_string(n) +
                             " samples; at least 64 are required");
    }
  }
  if (n < kMinTableSamples) {
    throw InvalidParameter("fast-scale grid needs at least 64 samples");
  }
  const auto s = medium.sample_grid(n);
  std::vector<double> ki(n), r(n), ri(n);
  for (std::size_t i = 0; i < n; ++i) {
    ki[i] = 1.0 / s[i].K;
    r[i] = s[i].rho;
    ri[i] = 1.0 / s[i].rho;
  }
  return {GridFunction(std::move(ki)), GridFunction(std::move(r)),
          GridFunction(std::move(ri)), averages(medium, n)};
}

FastVarTable::FastVarTable(std::variant<Piecewise, Grid> chain, int max_order)
    : chain_(std::move(chain)), max_order_(max_order) {}

bool FastVarTable::has(FastVar v) const {
  return std::visit([v](const auto& c) { return c.vars[idx(v)].has_value(); },
                    chain_);
}

const MediumAverages& FastVarTable::averages() const {
  return std::visit(
      [](const auto& c) -> const MediumAverages& { return c.materials.avg; },
      chain_);
}

double FastVarTable::weighted_mean(Weight w, FastVar v) const {
  if (!has(v)) {
    std::ostringstream os;
    os << "fast-variable function " << name(v) << " requires chain order "
       << order_of(v) << " but the table was built to order " << max_order_;
    throw MissingFastVariable(os.str());
  }
  return std::visit(
      [&](const auto& c) {
        const auto& f = *c.vars[idx(v)];
        if (w == Weight::one) return f.mean();
        return (weight_fn(c.materials, w) * f).mean();
      },
      chain_);
}

double FastVarTable::value(FastVar v, double y) const {
  if (!has(v)) {
    throw MissingFastVariable("fast-variable function " + std::string(name(v)) +
                              " was not computed");
  }
  return std::visit([&](const auto& c) { return (*c.vars[idx(v)])(y); }, chain_);
}

std::vector<double> FastVarTable::output_grid() const {
  std::size_t n = Medium::kDefaultSamples;
  if (const auto* g = std::get_if<Grid>(&chain_)) n = g->materials.rho.size();
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    ys[i] = static_cast<double>(i) / static_cast<double>(n);
  }
  return ys;
}

std::vector<double> FastVarTable::sample(FastVar v,
                                         std::span<const double> ys) const {
  if (!has(v)) {
    throw MissingFastVariable("fast-variable function " + std::string(name(v)) +
                              " was not computed");
  }
  std::vector<double> out;
  out.reserve(ys.size());
  if (const auto* g = std::get_if<Grid>(&chain_)) {
    const auto& f = *g->vars[idx(v)];
    const std::size_t n = f.size();
    const auto s = f.samples();
    for (double y : ys) {
      const double pos = y * static_cast<double>(n);
      const double r = std::round(pos);
      if (std::abs(pos - r) < 1e-9) {
        out.push_back(s[static_cast<std::size_t>(r) % n]);
      } else {
        out.push_back(f(y));
      }
    }
    return out;
  }
  const auto& f = *std::get<Piecewise>(chain_).vars[idx(v)];
  for (double y : ys) out.push_back(f(y));
  return out;
}

FastVarTable solve_fastvars(const Medium& medium, int max_order,
                            const FastFieldOptions& options) {
  if (max_order != 1 && max_order != 2 && max_order != 3 && max_order != 4 &&
      max_order != 6) {
    throw InvalidParameter("solve_fastvars: max_order must be 1, 2, 3, 4 or 6, got " +
                           std::to_string(max_order));
  }
  auto finish = [&](auto chain) {
    build_chain(chain, max_order);
    const auto& m = chain.materials;
    AssumptionResiduals res;
    res.K_inv_C = avg(m.K_inv, *chain.vars[idx(FastVar::C)]);
    res.rho_inv_C = avg(m.rho_inv, *chain.vars[idx(FastVar::C)]);
    res.rho_A = avg(m.rho, *chain.vars[idx(FastVar::A)]);
    res.rho_B = avg(m.rho, *chain.vars[idx(FastVar::B)]);
    FastVarTable table(std::move(chain), max_order);
    table.residuals_ = res;
    if (res.max_abs() > options.assumption_tolerance) {
      std::ostringstream os;
      os.precision(3);
      os << "cell averages assumed zero are not: <K^-1 C>=" << res.K_inv_C
         << " <rho^-1 C>=" << res.rho_inv_C << " <rho A>=" << res.rho_A
         << " <rho B>=" << res.rho_B;
      table.warnings_.push_back(os.str());
    }
    return table;
  };
  if (medium.kind() == MediumKind::piecewise) {
    return finish(FastVarTable::Piecewise{piecewise_materials(medium), {}});
  }
  return finish(FastVarTable::Grid{grid_materials(medium, options.n_samples), {}});
}

LayeredFirstOrder closed_form_fastvars_layered(const Medium& medium,
                                               std::span<const double> ys) {
  if (medium.kind() != MediumKind::piecewise) {
    throw UnsupportedMedium("closed-form fast variables need a piecewise medium");
  }
  const auto& L = medium.layers();
  const auto avg = averages(medium);
  const double cA2 = L.K_A / L.rho_A;
  const double cB2 = L.K_B / L.rho_B;
  const double a = avg.rho_h * (cA2 - cB2) / (8.0 * avg.K_m);
  const double b = (L.K_A - L.K_B) / (8.0 * avg.K_m);
  const double c = -(L.rho_A - L.rho_B) / (8.0 * avg.rho_m);
  LayeredFirstOrder out;
  for (double y : ys) {
    double s = y - 0.25;
    s -= std::floor(s);
    // Linear profile that vanishes at the band centre and flips at interfaces.
    const double shape = s <= 0.5 ? (1.0 - 4.0 * s) : -(3.0 - 4.0 * s);
    out.A.push_back(a * shape);
    out.B.push_back(b * shape);
    out.C.push_back(c * shape);
  }
  return out;
}

}  // namespace layerwave
