#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace layerwave {

using Complex = std::complex<double>;

// Real-to-complex FFT on an ny-by-nx row-major grid (x fastest). ny == 1
// gives a 1D transform. The inverse is normalized so inverse(forward(f)) == f.
// An instance owns scratch buffers and is not safe for concurrent use; create
// one per thread. Construction and destruction are serialized internally.
class RealFFT {
 public:
  RealFFT(std::size_t nx, std::size_t ny = 1);
  ~RealFFT();
  RealFFT(const RealFFT&) = delete;
  RealFFT& operator=(const RealFFT&) = delete;
  RealFFT(RealFFT&&) noexcept;
  RealFFT& operator=(RealFFT&&) noexcept;

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  // Number of complex coefficients along x (nx/2 + 1).
  std::size_t nx_spectral() const { return nx_ / 2 + 1; }
  std::size_t spectral_size() const { return ny_ * nx_spectral(); }
  std::size_t real_size() const { return ny_ * nx_; }

  void forward(std::span<const double> in, std::span<Complex> out);
  void inverse(std::span<const Complex> in, std::span<double> out);

 private:
  struct Impl;
  std::size_t nx_, ny_;
  std::unique_ptr<Impl> impl_;
};

// Signed integer wavenumber index of spectral position i on an n-point grid.
inline long wave_index(std::size_t i, std::size_t n) {
  const auto si = static_cast<long>(i);
  const auto sn = static_cast<long>(n);
  return si <= sn / 2 ? si : si - sn;
}

enum class Axis { x, y };

// Derivative of the trigonometric interpolant of a periodic ny-by-nx field on
// a domain of length `length` along `axis`. Odd orders zero the Nyquist mode.
std::vector<double> spectral_derivative(std::span<const double> field,
                                        std::size_t nx, std::size_t ny,
                                        double length, Axis axis, int order);

}  // namespace layerwave
