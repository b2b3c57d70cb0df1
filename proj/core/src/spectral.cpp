#include "layerwave/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "layerwave/error.hpp"

namespace layerwave {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct RealFFT::Impl {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  Impl(std::size_t nx, std::size_t ny) {
    std::lock_guard lock(planner_mutex());
    real = fftw_alloc_real(nx * ny);
    spec = fftw_alloc_complex(ny * (nx / 2 + 1));
    const int inx = static_cast<int>(nx);
    const int iny = static_cast<int>(ny);
    if (ny == 1) {
      fwd = fftw_plan_dft_r2c_1d(inx, real, spec, FFTW_ESTIMATE);
      inv = fftw_plan_dft_c2r_1d(inx, spec, real, FFTW_ESTIMATE);
    } else {
      fwd = fftw_plan_dft_r2c_2d(iny, inx, real, spec, FFTW_ESTIMATE);
      inv = fftw_plan_dft_c2r_2d(iny, inx, spec, real, FFTW_ESTIMATE);
    }
  }
  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(real);
    fftw_free(spec);
  }
};

RealFFT::RealFFT(std::size_t nx, std::size_t ny) : nx_(nx), ny_(ny) {
  if (nx < 2 || ny < 1) throw InvalidParameter("RealFFT: grid too small");
  impl_ = std::make_unique<Impl>(nx, ny);
}

RealFFT::~RealFFT() = default;
RealFFT::RealFFT(RealFFT&&) noexcept = default;
RealFFT& RealFFT::operator=(RealFFT&&) noexcept = default;

void RealFFT::forward(std::span<const double> in, std::span<Complex> out) {
  if (in.size() != real_size() || out.size() != spectral_size()) {
    throw InvalidParameter("RealFFT::forward: size mismatch");
  }
  std::copy(in.begin(), in.end(), impl_->real);
  fftw_execute(impl_->fwd);
  const auto* s = reinterpret_cast<const Complex*>(impl_->spec);
  std::copy(s, s + spectral_size(), out.begin());
}

void RealFFT::inverse(std::span<const Complex> in, std::span<double> out) {
  if (in.size() != spectral_size() || out.size() != real_size()) {
    throw InvalidParameter("RealFFT::inverse: size mismatch");
  }
  auto* s = reinterpret_cast<Complex*>(impl_->spec);
  std::copy(in.begin(), in.end(), s);
  fftw_execute(impl_->inv);
  const double scale = 1.0 / static_cast<double>(real_size());
  std::transform(impl_->real, impl_->real + real_size(), out.begin(),
                 [scale](double v) { return v * scale; });
}

std::vector<double> spectral_derivative(std::span<const double> field,
                                        std::size_t nx, std::size_t ny,
                                        double length, Axis axis, int order) {
  if (order < 0) throw InvalidParameter("spectral_derivative: negative order");
  if (!(length > 0)) throw InvalidParameter("spectral_derivative: length <= 0");
  if (nx == 1 && axis == Axis::y) {
    return spectral_derivative(field, ny, 1, length, Axis::x, order);
  }
  if (axis == Axis::y && ny == 1) {
    if (order == 0) return {field.begin(), field.end()};
    return std::vector<double>(field.size(), 0.0);
  }
  RealFFT fft(nx, ny);
  std::vector<Complex> spec(fft.spectral_size());
  fft.forward(field, spec);
  const std::size_t nxs = fft.nx_spectral();
  const std::size_t n_axis = axis == Axis::x ? nx : ny;
  const double k0 = 2.0 * std::numbers::pi / length;
  const bool odd = order % 2 == 1;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nxs; ++i) {
      const std::size_t idx = axis == Axis::x ? i : j;
      Complex& c = spec[j * nxs + i];
      if (odd && n_axis % 2 == 0 && idx == n_axis / 2) {
        c = 0.0;
        continue;
      }
      const double k = k0 * static_cast<double>(
                                axis == Axis::x ? static_cast<long>(i)
                                                : wave_index(j, ny));
      c *= std::pow(Complex(0.0, k), order);
    }
  }
  std::vector<double> out(field.size());
  fft.inverse(spec, out);
  return out;
}

}  // namespace layerwave
