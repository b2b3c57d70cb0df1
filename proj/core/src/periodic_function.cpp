#include "layerwave/periodic_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "layerwave/error.hpp"
#include "layerwave/spectral.hpp"

namespace layerwave {

namespace {

double wrap_unit(double y) { return y - std::floor(y); }

void trim(std::vector<double>& c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
}

double horner(std::span<const double> c, double s) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

}  // namespace

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breaks,
                                         std::vector<std::vector<double>> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  if (breaks_.size() < 2 || breaks_.front() != 0.0 || breaks_.back() != 1.0) {
    throw InvalidParameter("PiecewisePolynomial: breaks must run from 0 to 1");
  }
  if (!std::is_sorted(breaks_.begin(), breaks_.end()) ||
      std::adjacent_find(breaks_.begin(), breaks_.end()) != breaks_.end()) {
    throw InvalidParameter("PiecewisePolynomial: breaks must be strictly increasing");
  }
  if (pieces_.size() + 1 != breaks_.size()) {
    throw InvalidParameter("PiecewisePolynomial: piece count must be breaks-1");
  }
  for (auto& p : pieces_) {
    if (p.empty()) p.push_back(0.0);
  }
}

PiecewisePolynomial PiecewisePolynomial::constant(std::vector<double> breaks,
                                                  double value) {
  const std::size_t m = breaks.size() - 1;
  return {std::move(breaks), std::vector<std::vector<double>>(m, {value})};
}

PiecewisePolynomial PiecewisePolynomial::piecewise_constant(
    std::vector<double> breaks, std::span<const double> values) {
  if (values.size() + 1 != breaks.size()) {
    throw InvalidParameter("piecewise_constant: need one value per piece");
  }
  std::vector<std::vector<double>> pieces;
  for (double v : values) pieces.push_back({v});
  return {std::move(breaks), std::move(pieces)};
}

std::size_t PiecewisePolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& p : pieces_) d = std::max(d, p.size() - 1);
  return d;
}

std::size_t PiecewisePolynomial::locate(double y) const {
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), y);
  auto j = static_cast<std::size_t>(std::distance(breaks_.begin(), it));
  return std::clamp<std::size_t>(j, 1, pieces_.size()) - 1;
}

double PiecewisePolynomial::eval_piece(std::size_t j, double s) const {
  return horner(pieces_[j], s);
}

double PiecewisePolynomial::operator()(double y) const {
  const double yw = wrap_unit(y);
  const std::size_t j = locate(yw);
  return eval_piece(j, yw - breaks_[j]);
}

double PiecewisePolynomial::right_limit(double y) const { return (*this)(y); }

double PiecewisePolynomial::left_limit(double y) const {
  double yw = wrap_unit(y);
  if (yw == 0.0) yw = 1.0;
  auto it = std::lower_bound(breaks_.begin(), breaks_.end(), yw);
  auto j = static_cast<std::size_t>(std::distance(breaks_.begin(), it));
  j = std::clamp<std::size_t>(j, 1, pieces_.size()) - 1;
  return eval_piece(j, yw - breaks_[j]);
}

double PiecewisePolynomial::mean() const {
  double total = 0.0;
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    const double h = breaks_[j + 1] - breaks_[j];
    double hp = h;
    for (std::size_t n = 0; n < pieces_[j].size(); ++n) {
      total += pieces_[j][n] * hp / static_cast<double>(n + 1);
      hp *= h;
    }
  }
  return total;
}

PiecewisePolynomial PiecewisePolynomial::fluctuation() const {
  return *this - mean();
}

PiecewisePolynomial PiecewisePolynomial::zero_mean_antiderivative() const {
  const PiecewisePolynomial f = fluctuation();
  std::vector<std::vector<double>> out;
  out.reserve(pieces_.size());
  double start = 0.0;
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    const auto& c = f.pieces_[j];
    std::vector<double> a(c.size() + 1, 0.0);
    a[0] = start;
    for (std::size_t n = 0; n < c.size(); ++n) {
      a[n + 1] = c[n] / static_cast<double>(n + 1);
    }
    start = horner(a, breaks_[j + 1] - breaks_[j]);
    out.push_back(std::move(a));
  }
  PiecewisePolynomial result(breaks_, std::move(out));
  return result.fluctuation();
}

PiecewisePolynomial PiecewisePolynomial::derivative() const {
  std::vector<std::vector<double>> out;
  for (const auto& c : pieces_) {
    std::vector<double> d(std::max<std::size_t>(c.size() - 1, 1), 0.0);
    for (std::size_t n = 1; n < c.size(); ++n) {
      d[n - 1] = c[n] * static_cast<double>(n);
    }
    out.push_back(std::move(d));
  }
  return {breaks_, std::move(out)};
}

void PiecewisePolynomial::check_compatible(const PiecewisePolynomial& o) const {
  if (breaks_ != o.breaks_) {
    throw InvalidParameter("PiecewisePolynomial: breakpoints differ");
  }
}

PiecewisePolynomial& PiecewisePolynomial::operator+=(const PiecewisePolynomial& o) {
  check_compatible(o);
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    auto& a = pieces_[j];
    const auto& b = o.pieces_[j];
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t n = 0; n < b.size(); ++n) a[n] += b[n];
    trim(a);
  }
  return *this;
}

PiecewisePolynomial& PiecewisePolynomial::operator-=(const PiecewisePolynomial& o) {
  return *this += o * -1.0;
}

PiecewisePolynomial& PiecewisePolynomial::operator*=(const PiecewisePolynomial& o) {
  check_compatible(o);
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    const auto& a = pieces_[j];
    const auto& b = o.pieces_[j];
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t m = 0; m < a.size(); ++m) {
      for (std::size_t n = 0; n < b.size(); ++n) c[m + n] += a[m] * b[n];
    }
    trim(c);
    pieces_[j] = std::move(c);
  }
  return *this;
}

PiecewisePolynomial& PiecewisePolynomial::operator*=(double s) {
  for (auto& p : pieces_) {
    for (double& c : p) c *= s;
    trim(p);
  }
  return *this;
}

PiecewisePolynomial& PiecewisePolynomial::operator+=(double s) {
  for (auto& p : pieces_) p[0] += s;
  return *this;
}

GridFunction::GridFunction(std::vector<double> samples) : v_(std::move(samples)) {
  if (v_.size() < 2) throw InvalidParameter("GridFunction: need at least 2 samples");
}

GridFunction GridFunction::constant(std::size_t n, double value) {
  return GridFunction(std::vector<double>(n, value));
}

double GridFunction::operator()(double y) const {
  const std::size_t n = v_.size();
  RealFFT fft(n);
  std::vector<Complex> spec(fft.spectral_size());
  fft.forward(v_, spec);
  const double yw = wrap_unit(y);
  const double inv_n = 1.0 / static_cast<double>(n);
  double acc = spec[0].real();
  for (std::size_t k = 1; k < spec.size(); ++k) {
    const double w = (n % 2 == 0 && k == n / 2) ? 1.0 : 2.0;
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) * yw;
    acc += w * (spec[k].real() * std::cos(ang) - spec[k].imag() * std::sin(ang));
  }
  return acc * inv_n;
}

double GridFunction::mean() const {
  double s = 0.0;
  for (double v : v_) s += v;
  return s / static_cast<double>(v_.size());
}

GridFunction GridFunction::fluctuation() const { return *this - mean(); }

GridFunction GridFunction::zero_mean_antiderivative() const {
  const std::size_t n = v_.size();
  RealFFT fft(n);
  std::vector<Complex> spec(fft.spectral_size());
  fft.forward(v_, spec);
  spec[0] = 0.0;
  for (std::size_t k = 1; k < spec.size(); ++k) {
    if (n % 2 == 0 && k == n / 2) {
      spec[k] = 0.0;
    } else {
      spec[k] /= Complex(0.0, 2.0 * std::numbers::pi * static_cast<double>(k));
    }
  }
  std::vector<double> out(n);
  fft.inverse(spec, out);
  return GridFunction(std::move(out));
}

GridFunction GridFunction::derivative() const {
  return GridFunction(spectral_derivative(v_, v_.size(), 1, 1.0, Axis::x, 1));
}

void GridFunction::check_compatible(const GridFunction& o) const {
  if (v_.size() != o.v_.size()) {
    throw InvalidParameter("GridFunction: sample counts differ");
  }
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(const GridFunction& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] *= o.v_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double s) {
  for (double& v : v_) v *= s;
  return *this;
}

GridFunction& GridFunction::operator+=(double s) {
  for (double& v : v_) v += s;
  return *this;
}

}  // namespace layerwave
