// Uniform periodic 2D grid, spectral wavenumber tables, quadrature.
#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace ringsplit {

using cplx = std::complex<double>;

// Centered uniform grid with DFT-ordered wavenumber tables.
// x[i] = x_min + i*dx with x_min = -nx*dx/2, so the origin lies on a grid point.
// kx[j] = 2*pi*f(j)/(nx*dx), f(j) the signed DFT frequency index (kx[0] = 0).
// Immutable after construction; shareable across threads.
struct Grid2D {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  double x_min = 0.0;
  double y_min = 0.0;
  std::vector<double> kx;
  std::vector<double> ky;

  std::size_t size() const { return nx * ny; }
  double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx; }
  double y(std::size_t j) const { return y_min + static_cast<double>(j) * dy; }
  double extent_x() const { return static_cast<double>(nx) * dx; }
  double extent_y() const { return static_cast<double>(ny) * dy; }
  double cell_area() const { return dx * dy; }
  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * nx + ix; }
};

bool is_power_of_two(std::size_t n);

// Square centered grid; n must be a power of two >= 8, step > 0.
Grid2D make_grid(std::size_t n, double step);
Grid2D make_grid(std::size_t nx, std::size_t ny, double dx, double dy);

// Complex samples on a grid, row-major with x fastest: values[iy*nx + ix].
struct ComplexField2D {
  std::shared_ptr<const Grid2D> grid;
  std::vector<cplx> values;

  static ComplexField2D zeros(std::shared_ptr<const Grid2D> g);
  std::size_t size() const { return values.size(); }
  cplx& at(std::size_t ix, std::size_t iy) { return values[grid->index(ix, iy)]; }
  const cplx& at(std::size_t ix, std::size_t iy) const { return values[grid->index(ix, iy)]; }
};

// DFT convention (fixed once, all downstream phase factors assume it):
//   forward:  F[k] = sum_x f[x] * exp(-i k.x)   (unnormalized)
//   inverse:  f[x] = (1/(nx*ny)) * sum_k F[k] * exp(+i k.x)
// so inverse(forward(f)) == f and Parseval reads sum|f|^2 = sum|F|^2/(nx*ny).
ComplexField2D forward_transform(const ComplexField2D& f);
ComplexField2D inverse_transform(const ComplexField2D& F);

// Rectangle-rule quadrature: sum(f)*dx*dy. Spectrally accurate for smooth
// periodic integrands on this grid.
double integrate(const Grid2D& grid, std::span<const double> samples);
double integrate_abs2(const ComplexField2D& f);

std::vector<double> density(const ComplexField2D& psi);

}  // namespace ringsplit
