#include "layerwave/medium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "layerwave/error.hpp"

namespace layerwave {

namespace {

constexpr double kFlatTolerance = 1e-12;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidParameter(std::string("medium parameter ") + name +
                           " must be positive and finite");
  }
}

double wrap_unit(double y) { return y - std::floor(y); }

MaterialSample make_sample(double K, double rho) {
  return {K, rho, std::sqrt(K * rho), std::sqrt(K / rho)};
}

bool relatively_equal(double a, double b) {
  return std::abs(a - b) <= kFlatTolerance * std::max(std::abs(a), std::abs(b));
}

}  // namespace

std::string to_string(MediumKind kind) {
  switch (kind) {
    case MediumKind::piecewise:
      return "piecewise";
    case MediumKind::sinusoidal:
      return "sinusoidal";
    case MediumKind::tabulated:
      return "tabulated";
  }
  return "unknown";
}

Medium Medium::piecewise(double K_A, double K_B, double rho_A, double rho_B) {
  require_positive(K_A, "K_A");
  require_positive(K_B, "K_B");
  require_positive(rho_A, "rho_A");
  require_positive(rho_B, "rho_B");
  Medium m;
  m.kind_ = MediumKind::piecewise;
  m.layers_ = {K_A, K_B, rho_A, rho_B};
  return m;
}

Medium Medium::sinusoidal(double K_A, double K_B) {
  require_positive(K_A, "K_A");
  require_positive(K_B, "K_B");
  Medium m;
  m.kind_ = MediumKind::sinusoidal;
  m.sin_K_A_ = K_A;
  m.sin_K_B_ = K_B;
  return m;
}

Medium Medium::tabulated(std::vector<double> K, std::vector<double> rho) {
  if (K.size() != rho.size()) {
    throw InvalidParameter("tabulated medium: K and rho tables differ in length");
  }
  if (K.size() < 2) {
    throw InvalidParameter("tabulated medium needs at least 2 samples");
  }
  for (double k : K) require_positive(k, "K(table)");
  for (double r : rho) require_positive(r, "rho(table)");
  Medium m;
  m.kind_ = MediumKind::tabulated;
  m.table_K_ = std::move(K);
  m.table_rho_ = std::move(rho);
  return m;
}

const LayerPair& Medium::layers() const {
  if (kind_ != MediumKind::piecewise) {
    throw UnsupportedMedium("operation requires a piecewise medium, got " +
                            to_string(kind_));
  }
  return layers_;
}

std::pair<double, double> Medium::sinusoid() const {
  if (kind_ != MediumKind::sinusoidal) {
    throw UnsupportedMedium("operation requires a sinusoidal medium, got " +
                            to_string(kind_));
  }
  return {sin_K_A_, sin_K_B_};
}

bool Medium::in_band_a(double y) {
  return std::abs(wrap_unit(y) - 0.5) < 0.25;
}

MaterialSample Medium::sample(double y) const {
  const double yw = wrap_unit(y);
  switch (kind_) {
    case MediumKind::piecewise:
      return in_band_a(yw) ? make_sample(layers_.K_A, layers_.rho_A)
                           : make_sample(layers_.K_B, layers_.rho_B);
    case MediumKind::sinusoidal: {
      const double K = 0.5 * (sin_K_A_ + sin_K_B_) +
                       0.5 * (sin_K_A_ - sin_K_B_) *
                           std::sin(2.0 * std::numbers::pi * yw);
      return make_sample(K, 1.0 / K);
    }
    case MediumKind::tabulated: {
      const std::size_t n = table_K_.size();
      const double pos = yw * static_cast<double>(n);
      const auto i0 = std::min(static_cast<std::size_t>(pos), n - 1);
      const std::size_t i1 = (i0 + 1) % n;
      const double w = pos - static_cast<double>(i0);
      return make_sample((1 - w) * table_K_[i0] + w * table_K_[i1],
                         (1 - w) * table_rho_[i0] + w * table_rho_[i1]);
    }
  }
  return make_sample(1.0, 1.0);
}

std::vector<MaterialSample> Medium::sample_grid(std::size_t n) const {
  std::vector<MaterialSample> out;
  out.reserve(n);
  if (kind_ == MediumKind::tabulated && n == table_K_.size()) {
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(make_sample(table_K_[i], table_rho_[i]));
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(sample(static_cast<double>(i) / static_cast<double>(n)));
  }
  return out;
}

std::string Medium::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case MediumKind::piecewise:
      os << "piecewise K_A=" << layers_.K_A << " K_B=" << layers_.K_B
         << " rho_A=" << layers_.rho_A << " rho_B=" << layers_.rho_B;
      break;
    case MediumKind::sinusoidal:
      os << "sinusoidal K_A=" << sin_K_A_ << " K_B=" << sin_K_B_ << " rho=1/K";
      break;
    case MediumKind::tabulated:
      os << "tabulated n=" << table_K_.size();
      break;
  }
  return os.str();
}

MediumAverages averages(const Medium& medium, std::size_t n_samples) {
  if (n_samples < 2) throw InvalidParameter("averages: n_samples must be >= 2");
  MediumAverages avg;
  if (medium.kind() == MediumKind::piecewise) {
    const auto& L = medium.layers();
    avg.K_m = 0.5 * (L.K_A + L.K_B);
    avg.K_h = 2.0 / (1.0 / L.K_A + 1.0 / L.K_B);
    avg.rho_m = 0.5 * (L.rho_A + L.rho_B);
    avg.rho_h = 2.0 / (1.0 / L.rho_A + 1.0 / L.rho_B);
    avg.constant_impedance =
        relatively_equal(std::sqrt(L.K_A * L.rho_A), std::sqrt(L.K_B * L.rho_B));
    avg.constant_soundspeed =
        relatively_equal(std::sqrt(L.K_A / L.rho_A), std::sqrt(L.K_B / L.rho_B));
    return avg;
  }

  const std::size_t n = medium.kind() == MediumKind::tabulated
                            ? medium.table_K().size()
                            : n_samples;
  const auto samples = medium.sample_grid(n);
  double sK = 0, sKi = 0, sr = 0, sri = 0, sZ = 0, sc = 0;
  for (const auto& s : samples) {
    sK += s.K;
    sKi += 1.0 / s.K;
    sr += s.rho;
    sri += 1.0 / s.rho;
    sZ += s.Z;
    sc += s.c;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  avg.K_m = sK * inv_n;
  avg.K_h = 1.0 / (sKi * inv_n);
  avg.rho_m = sr * inv_n;
  avg.rho_h = 1.0 / (sri * inv_n);
  const double Zbar = sZ * inv_n;
  const double cbar = sc * inv_n;
  double dZ = 0, dc = 0;
  for (const auto& s : samples) {
    dZ = std::max(dZ, std::abs(s.Z - Zbar));
    dc = std::max(dc, std::abs(s.c - cbar));
  }
  avg.constant_impedance = dZ / Zbar < kFlatTolerance;
  avg.constant_soundspeed = dc / cbar < kFlatTolerance;
  return avg;
}

}  // namespace layerwave
