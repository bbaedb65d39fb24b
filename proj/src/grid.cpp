#include "ringsplit/grid.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include "ringsplit/fft.hpp"
#include "ringsplit/kernels.hpp"

namespace ringsplit {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {

std::vector<double> wavenumbers(std::size_t n, double step) {
  std::vector<double> k(n);
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * step);
  for (std::size_t j = 0; j < n; ++j) {
    const auto signed_index = (j < n / 2) ? static_cast<long>(j)
                                          : static_cast<long>(j) - static_cast<long>(n);
    k[j] = dk * static_cast<double>(signed_index);
  }
  return k;
}

}  // namespace

Grid2D make_grid(std::size_t nx, std::size_t ny, double dx, double dy) {
  if (!is_power_of_two(nx) || !is_power_of_two(ny))
    throw std::invalid_argument("make_grid: point count must be a power of two, got " +
                                std::to_string(nx) + "x" + std::to_string(ny));
  if (nx < 8 || ny < 8)
    throw std::invalid_argument("make_grid: point count must be >= 8");
  if (!(dx > 0.0) || !(dy > 0.0))
    throw std::invalid_argument("make_grid: step must be positive");
  Grid2D g;
  g.nx = nx;
  g.ny = ny;
  g.dx = dx;
  g.dy = dy;
  g.x_min = -0.5 * static_cast<double>(nx) * dx;
  g.y_min = -0.5 * static_cast<double>(ny) * dy;
  g.kx = wavenumbers(nx, dx);
  g.ky = wavenumbers(ny, dy);
  return g;
}

Grid2D make_grid(std::size_t n, double step) { return make_grid(n, n, step, step); }

ComplexField2D ComplexField2D::zeros(std::shared_ptr<const Grid2D> g) {
  ComplexField2D f;
  f.values.assign(g->size(), cplx{});
  f.grid = std::move(g);
  return f;
}

ComplexField2D forward_transform(const ComplexField2D& f) {
  ComplexField2D out = f;
  Fft2d fft(f.grid->nx, f.grid->ny);
  fft.forward(out.values.data());
  return out;
}

ComplexField2D inverse_transform(const ComplexField2D& F) {
  ComplexField2D out = F;
  Fft2d fft(F.grid->nx, F.grid->ny);
  fft.inverse(out.values.data());
  return out;
}

double integrate(const Grid2D& grid, std::span<const double> samples) {
  if (samples.size() != grid.size())
    throw std::invalid_argument("integrate: sample count does not match grid");
  return kernels::par::sum(samples.data(), samples.size()) * grid.cell_area();
}

double integrate_abs2(const ComplexField2D& f) {
  return kernels::par::sum_abs2(f.values.data(), f.values.size()) *
         f.grid->cell_area();
}

std::vector<double> density(const ComplexField2D& psi) {
  std::vector<double> rho(psi.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(psi.values[i]);
  return rho;
}

}  // namespace ringsplit
