#include "layerwave/coeffs.hpp"

#include "layerwave/error.hpp"

namespace layerwave {

namespace {

template <class F>
void assign(HomogCoefficients& out, Coef c, F&& f) {
  try {
    out.set(c, f());
  } catch (const MissingFastVariable& e) {
    out.mark_missing(c, std::string(name(c)) + ": " + e.what());
  }
}

}  // namespace

std::string_view name(Coef c) {
  static constexpr std::array<std::string_view, kCoefCount> names = {
      "alpha1", "alpha2", "alpha3", "alpha4", "alpha5", "alpha6",
      "beta1",  "beta2",  "beta3",  "beta4",  "beta5",  "beta6",
      "gamma1", "gamma2", "gamma3", "gamma4", "gamma5"};
  return names[static_cast<std::size_t>(c)];
}

int order_of(Coef c) {
  switch (c) {
    case Coef::alpha1: case Coef::alpha2: case Coef::beta1: case Coef::beta2:
    case Coef::gamma1: case Coef::gamma2:
      return 2;
    case Coef::alpha6: case Coef::beta6:
      return 6;
    default:
      return 4;
  }
}

Coef alpha(int i) {
  if (i < 1 || i > 6) throw InvalidParameter("alpha index out of range");
  return static_cast<Coef>(i - 1);
}
Coef beta(int i) {
  if (i < 1 || i > 6) throw InvalidParameter("beta index out of range");
  return static_cast<Coef>(6 + i - 1);
}
Coef gamma(int i) {
  if (i < 1 || i > 5) throw InvalidParameter("gamma index out of range");
  return static_cast<Coef>(12 + i - 1);
}

std::string_view name(Provenance p) {
  return p == Provenance::numeric_chain ? "numeric-chain" : "closed-form";
}

HomogCoefficients::HomogCoefficients(Provenance provenance)
    : provenance_(provenance) {
  for (auto& m : missing_) m = "not computed";
}

HomogCoefficients HomogCoefficients::zero() {
  HomogCoefficients c(Provenance::closed_form);
  for (std::size_t k = 0; k < kCoefCount; ++k) c.set(static_cast<Coef>(k), 0.0);
  return c;
}

double HomogCoefficients::get(Coef c) const {
  if (!values_[i(c)]) throw MissingFastVariable(missing_[i(c)]);
  return *values_[i(c)];
}

void HomogCoefficients::mark_missing(Coef c, std::string reason) {
  values_[i(c)].reset();
  missing_[i(c)] = std::move(reason);
}

bool HomogCoefficients::complete_through(int order) const {
  for (std::size_t k = 0; k < kCoefCount; ++k) {
    const auto c = static_cast<Coef>(k);
    if (order_of(c) <= order && !has(c)) return false;
  }
  return true;
}

HomogCoefficients compute_coefficients(const FastVarTable& t) {
  const auto& a = t.averages();
  const double Kh = a.K_h, rh = a.rho_h, rm = a.rho_m;
  auto k = [&](FastVar v) { return t.weighted_mean(Weight::K_inv, v); };
  auto r = [&](FastVar v) { return t.weighted_mean(Weight::rho, v); };
  auto ri = [&](FastVar v) { return t.weighted_mean(Weight::rho_inv, v); };
  using FV = FastVar;

  HomogCoefficients c(Provenance::numeric_chain);
  assign(c, Coef::alpha1, [&] { return Kh * k(FV::F); });
  assign(c, Coef::alpha2, [&] { return Kh * k(FV::H); });
  assign(c, Coef::alpha3, [&] {
    const double kF = k(FV::F);
    return Kh * k(FV::U) - Kh * Kh * kF * kF;
  });
  assign(c, Coef::alpha4, [&] {
    const double kH = k(FV::H);
    return Kh * k(FV::W) - Kh * Kh * kH * kH;
  });
  assign(c, Coef::alpha5, [&] {
    return Kh * k(FV::V) - 2.0 * Kh * Kh * k(FV::F) * k(FV::H);
  });
  assign(c, Coef::alpha6, [&] {
    const double kH = k(FV::H);
    return Kh * k(FV::Btilde) + Kh * Kh * Kh * kH * kH * kH -
           2.0 * Kh * Kh * kH * k(FV::W);
  });

  const std::array<FV, 6> beta_fns{FV::F, FV::H, FV::U, FV::W, FV::V, FV::Btilde};
  for (int n = 1; n <= 6; ++n) {
    assign(c, beta(n), [&] { return -rh * ri(beta_fns[n - 1]); });
  }

  assign(c, Coef::gamma1, [&] { return r(FV::E) / rm; });
  assign(c, Coef::gamma2, [&] { return r(FV::D) / rh; });
  assign(c, Coef::gamma3, [&] {
    const double pE = r(FV::E);
    return r(FV::T) / rm - pE * pE / (rm * rm);
  });
  assign(c, Coef::gamma4, [&] {
    return r(FV::Q) / rh + ri(FV::F) * r(FV::D) + r(FV::S) / rm -
           r(FV::E) * r(FV::D) / (rm * rh);
  });
  assign(c, Coef::gamma5, [&] { return r(FV::D) * ri(FV::H) + r(FV::R) / rh; });
  return c;
}

HomogCoefficients closed_form_first_order_layered(const Medium& medium) {
  if (medium.kind() != MediumKind::piecewise) {
    throw UnsupportedMedium("closed-form coefficients need a piecewise medium");
  }
  const auto& L = medium.layers();
  const auto a = averages(medium);
  const double dK = L.K_A - L.K_B;
  const double drho = L.rho_A - L.rho_B;
  const double dZ2 = L.K_A * L.rho_A - L.K_B * L.rho_B;
  const double dc2 = L.K_A / L.rho_A - L.K_B / L.rho_B;
  const double Km2 = a.K_m * a.K_m;

  HomogCoefficients c(Provenance::closed_form);
  for (std::size_t k = 0; k < kCoefCount; ++k) {
    c.mark_missing(static_cast<Coef>(k), "no closed form for " +
                                             std::string(name(static_cast<Coef>(k))));
  }
  c.set(Coef::alpha1, -dK * dZ2 / (192.0 * Km2 * a.rho_m));
  c.set(Coef::alpha2, -dK * dc2 * a.rho_m / (192.0 * Km2));
  c.set(Coef::beta1, drho * dZ2 / (192.0 * a.K_m * a.rho_m * a.rho_m));
  c.set(Coef::beta2, drho * dc2 / (192.0 * a.K_m));
  c.set(Coef::gamma1, -c.get(Coef::beta1));
  c.set(Coef::gamma2, -c.get(Coef::beta2));
  return c;
}

LeadingDispersion combined_leading_dispersion(const HomogCoefficients& c) {
  return {c.get(Coef::alpha1) + c.get(Coef::gamma1),
          c.get(Coef::alpha2) + c.get(Coef::beta2)};
}

LeadingDispersion closed_form_leading_dispersion(const Medium& medium) {
  if (medium.kind() != MediumKind::piecewise) {
    throw UnsupportedMedium("closed-form leading dispersion needs a piecewise medium");
  }
  const auto& L = medium.layers();
  const auto a = averages(medium);
  const double dZ2 = L.K_A * L.rho_A - L.K_B * L.rho_B;
  const double dc2 = L.K_A / L.rho_A - L.K_B / L.rho_B;
  const double Km2 = a.K_m * a.K_m;
  return {dZ2 * dZ2 / (192.0 * Km2 * a.rho_m * a.rho_m),
          dc2 * dc2 * a.rho_m * a.rho_h / (192.0 * Km2)};
}

}  // namespace layerwave
