#pragma once

#include <cstddef>
#include <vector>

namespace layerwave {

// Rectangular periodic grid. Cell/collocation point (i, j) sits at
// x0 + i*dx (+ dx/2 when cell_centered), likewise in y. Storage is row-major
// with x fastest: index j*nx + i.
struct Grid2D {
  double x0 = 0, Lx = 1, y0 = 0, Ly = 1;
  std::size_t nx = 1, ny = 1;
  bool cell_centered = false;

  double dx() const { return Lx / static_cast<double>(nx); }
  double dy() const { return Ly / static_cast<double>(ny); }
  double x(std::size_t i) const {
    return x0 + (static_cast<double>(i) + (cell_centered ? 0.5 : 0.0)) * dx();
  }
  double y(std::size_t j) const {
    return y0 + (static_cast<double>(j) + (cell_centered ? 0.5 : 0.0)) * dy();
  }
  std::size_t size() const { return nx * ny; }
  std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }
};

// Pressure and velocities on a grid at time t.
struct WaveField {
  Grid2D grid;
  double t = 0;
  std::vector<double> p, u, v;

  WaveField() = default;
  explicit WaveField(const Grid2D& g, double time = 0)
      : grid(g), t(time), p(g.size(), 0.0), u(g.size(), 0.0), v(g.size(), 0.0) {}
};

}  // namespace layerwave
