#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "layerwave/fastfield.hpp"
#include "layerwave/medium.hpp"

namespace layerwave {

enum class Coef {
  alpha1, alpha2, alpha3, alpha4, alpha5, alpha6,
  beta1, beta2, beta3, beta4, beta5, beta6,
  gamma1, gamma2, gamma3, gamma4, gamma5,
};

inline constexpr std::size_t kCoefCount = 17;

std::string_view name(Coef c);
// Power of delta multiplying the coefficient in the effective system.
int order_of(Coef c);
Coef alpha(int i);
Coef beta(int i);
Coef gamma(int i);

enum class Provenance { numeric_chain, closed_form };
std::string_view name(Provenance p);

// Dispersive coefficients with lambda = 1. Entries that were not computed
// hold the reason instead of a value.
class HomogCoefficients {
 public:
  explicit HomogCoefficients(Provenance provenance);
  static HomogCoefficients zero();

  Provenance provenance() const { return provenance_; }

  bool has(Coef c) const { return values_[i(c)].has_value(); }
  // Throws MissingFastVariable with the recorded reason when absent.
  double get(Coef c) const;
  double get_or(Coef c, double fallback) const { return values_[i(c)].value_or(fallback); }
  void set(Coef c, double v) { values_[i(c)] = v; }
  void mark_missing(Coef c, std::string reason);

  // True when every coefficient entering a dispersion order is present.
  bool complete_through(int order) const;

 private:
  static std::size_t i(Coef c) { return static_cast<std::size_t>(c); }
  Provenance provenance_;
  std::array<std::optional<double>, kCoefCount> values_;
  std::array<std::string, kCoefCount> missing_;
};

HomogCoefficients compute_coefficients(const FastVarTable& table);

// Six leading coefficients of a two-layer medium from the closed forms.
HomogCoefficients closed_form_first_order_layered(const Medium& medium);

struct LeadingDispersion {
  double normal;      // alpha1 + gamma1
  double transverse;  // alpha2 + beta2
};

LeadingDispersion combined_leading_dispersion(const HomogCoefficients& c);

// Printed two-layer expressions for the combined second-order-form
// coefficients: (Z_A^2-Z_B^2)^2/(192 K_m^2 rho_m^2) and
// (c_A^2-c_B^2)^2 rho_m rho_h/(192 K_m^2).
LeadingDispersion closed_form_leading_dispersion(const Medium& medium);

}  // namespace layerwave
