#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "layerwave/medium.hpp"
#include "layerwave/periodic_function.hpp"

namespace layerwave {

// Fast-variable cell functions, in dependency order.
enum class FastVar {
  A, B, C,
  D, E, F, H,
  I, J, L, M, N, P,
  Q, R, S, T, U, V, W,
  Atilde, Btilde,
};

inline constexpr std::size_t kFastVarCount = 22;
inline constexpr std::array<FastVar, kFastVarCount> kAllFastVars = {
    FastVar::A, FastVar::B, FastVar::C, FastVar::D, FastVar::E, FastVar::F,
    FastVar::H, FastVar::I, FastVar::J, FastVar::L, FastVar::M, FastVar::N,
    FastVar::P, FastVar::Q, FastVar::R, FastVar::S, FastVar::T, FastVar::U,
    FastVar::V, FastVar::W, FastVar::Atilde, FastVar::Btilde};

std::string_view name(FastVar v);
// Chain depth at which v first becomes available (1, 2, 3, 4 or 6).
int order_of(FastVar v);

// Multiplier inside a period average <w f>.
enum class Weight { one, K_inv, rho, rho_inv };

// Material coefficient functions and averages in one representation.
template <class Fn>
struct MaterialFunctions {
  Fn K_inv;
  Fn rho;
  Fn rho_inv;
  MediumAverages avg;
};

template <class Fn>
struct FastVarChain {
  MaterialFunctions<Fn> materials;
  std::array<std::optional<Fn>, kFastVarCount> vars;
};

// Averages that the chain construction assumes are zero.
struct AssumptionResiduals {
  double K_inv_C = 0;
  double rho_inv_C = 0;
  double rho_A = 0;
  double rho_B = 0;
  double max_abs() const;
};

struct FastFieldOptions {
  std::size_t n_samples = Medium::kDefaultSamples;
  double assumption_tolerance = 1e-10;
};

// Immutable table of fast-variable functions through a chain depth.
class FastVarTable {
 public:
  using Piecewise = FastVarChain<PiecewisePolynomial>;
  using Grid = FastVarChain<GridFunction>;

  FastVarTable(std::variant<Piecewise, Grid> chain, int max_order);

  int max_order() const { return max_order_; }
  bool exact() const { return std::holds_alternative<Piecewise>(chain_); }
  bool has(FastVar v) const;
  const MediumAverages& averages() const;

  // <w v>; throws MissingFastVariable when v was not computed.
  double weighted_mean(Weight w, FastVar v) const;
  double mean(FastVar v) const { return weighted_mean(Weight::one, v); }

  double value(FastVar v, double y) const;
  std::vector<double> sample(FastVar v, std::span<const double> ys) const;
  // Uniform sample points used for table output.
  std::vector<double> output_grid() const;

  const AssumptionResiduals& residuals() const { return residuals_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const std::variant<Piecewise, Grid>& chain() const { return chain_; }

 private:
  friend FastVarTable solve_fastvars(const Medium&, int, const FastFieldOptions&);

  std::variant<Piecewise, Grid> chain_;
  int max_order_;
  AssumptionResiduals residuals_;
  std::vector<std::string> warnings_;
};

// Builds the chain through max_order in {1,2,3,4,6}. Piecewise media use exact
// piecewise polynomials; other media use uniform samples.
FastVarTable solve_fastvars(const Medium& medium, int max_order,
                            const FastFieldOptions& options = {});

// Material coefficient functions on the cell for a piecewise medium, with
// breakpoints at 0, 1/4, 3/4, 1.
MaterialFunctions<PiecewisePolynomial> piecewise_materials(const Medium& medium);
MaterialFunctions<GridFunction> grid_materials(const Medium& medium,
                                               std::size_t n_samples);

struct LayeredFirstOrder {
  std::vector<double> A, B, C;
};

// Piecewise-linear closed forms of A, B, C for a two-layer medium, evaluated
// at ys. The closed forms are written for material A on [0,1/2); they are
// shifted by 1/4 to match the layout where A occupies (1/4,3/4).
LayeredFirstOrder closed_form_fastvars_layered(const Medium& medium,
                                               std::span<const double> ys);

}  // namespace layerwave
