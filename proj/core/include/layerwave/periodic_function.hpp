#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace layerwave {

// Exact piecewise polynomial on one period [0,1). Piece j covers
// [breaks[j], breaks[j+1]) and is stored in the local variable s = y - breaks[j]
// with ascending coefficients. All operands of a binary operation must share
// the same breakpoints.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::vector<double> breaks,
                      std::vector<std::vector<double>> pieces);

  static PiecewisePolynomial constant(std::vector<double> breaks, double value);
  static PiecewisePolynomial piecewise_constant(std::vector<double> breaks,
                                                std::span<const double> values);

  std::span<const double> breaks() const { return breaks_; }
  std::size_t piece_count() const { return pieces_.size(); }
  std::span<const double> piece(std::size_t j) const { return pieces_[j]; }
  std::size_t degree() const;

  // y is reduced modulo 1.
  double operator()(double y) const;
  // One-sided limits at y, for use at breakpoints.
  double left_limit(double y) const;
  double right_limit(double y) const;

  double mean() const;
  PiecewisePolynomial fluctuation() const;
  // Periodic antiderivative of the fluctuation, shifted to zero mean.
  PiecewisePolynomial zero_mean_antiderivative() const;
  PiecewisePolynomial derivative() const;

  PiecewisePolynomial& operator+=(const PiecewisePolynomial& o);
  PiecewisePolynomial& operator-=(const PiecewisePolynomial& o);
  PiecewisePolynomial& operator*=(const PiecewisePolynomial& o);
  PiecewisePolynomial& operator*=(double s);
  PiecewisePolynomial& operator+=(double s);

  friend PiecewisePolynomial operator+(PiecewisePolynomial a, const PiecewisePolynomial& b) { return a += b; }
  friend PiecewisePolynomial operator-(PiecewisePolynomial a, const PiecewisePolynomial& b) { return a -= b; }
  friend PiecewisePolynomial operator*(PiecewisePolynomial a, const PiecewisePolynomial& b) { return a *= b; }
  friend PiecewisePolynomial operator*(PiecewisePolynomial a, double s) { return a *= s; }
  friend PiecewisePolynomial operator*(double s, PiecewisePolynomial a) { return a *= s; }
  friend PiecewisePolynomial operator-(PiecewisePolynomial a, double s) { return a += -s; }
  friend PiecewisePolynomial operator+(PiecewisePolynomial a, double s) { return a += s; }

 private:
  std::size_t locate(double y) const;
  double eval_piece(std::size_t j, double s) const;
  void check_compatible(const PiecewisePolynomial& o) const;

  std::vector<double> breaks_;
  std::vector<std::vector<double>> pieces_;
};

// Uniform samples y_i = i/n of a smooth periodic function on [0,1).
// Means use the periodic trapezoid rule; antiderivatives are spectral.
class GridFunction {
 public:
  explicit GridFunction(std::vector<double> samples);
  static GridFunction constant(std::size_t n, double value);

  std::size_t size() const { return v_.size(); }
  std::span<const double> samples() const { return v_; }

  // Trigonometric interpolation at y (reduced modulo 1).
  double operator()(double y) const;

  double mean() const;
  GridFunction fluctuation() const;
  GridFunction zero_mean_antiderivative() const;
  GridFunction derivative() const;

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(const GridFunction& o);
  GridFunction& operator*=(double s);
  GridFunction& operator+=(double s);

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(GridFunction a, const GridFunction& b) { return a *= b; }
  friend GridFunction operator*(GridFunction a, double s) { return a *= s; }
  friend GridFunction operator*(double s, GridFunction a) { return a *= s; }
  friend GridFunction operator-(GridFunction a, double s) { return a += -s; }
  friend GridFunction operator+(GridFunction a, double s) { return a += s; }

 private:
  void check_compatible(const GridFunction& o) const;
  std::vector<double> v_;
};

}  // namespace layerwave
