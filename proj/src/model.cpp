#include "ringsplit/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ringsplit {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

Units derive_units(const PhysicalParams& p) {
  require(p.m1_amu > 0 && p.m2_amu > 0, "masses must be positive");
  require(p.omega_perp > 0, "omega_perp must be positive");
  const double m1 = p.m1_amu * constants::atomic_mass_unit;
  Units u;
  u.a_perp = std::sqrt(constants::hbar / (2.0 * m1 * p.omega_perp));
  u.t_unit = 1.0 / p.omega_perp;
  return u;
}

kernels::CouplingMatrix coupling_matrix(const PhysicalParams& p) {
  require(p.lambda > 0, "lambda must be positive");
  require(p.n1 > 0 && p.n2 > 0, "atom numbers must be positive");
  const Units u = derive_units(p);
  const double pref = std::sqrt(2.0 * std::numbers::pi * p.lambda) *
                      (p.m1_amu + p.m2_amu) / (p.m2_amu * u.a_perp);
  kernels::CouplingMatrix g;
  g.g11 = pref * p.a11_m * p.n1;
  g.g12 = pref * p.a12_m * p.n2;
  g.g21 = pref * p.a12_m * p.n1;
  g.g22 = pref * p.a22_m * p.n2;
  return g;
}

double calibrate_spike(double omega, double sigma, double r0) {
  require(sigma > 0, "sigma must be positive");
  require(r0 > 0, "r0 must be positive");
  // dV1/dr(r0) = 0 has a ring-minimum branch only while the spike is narrower
  // than the 2*r0 turnover.
  if (!(2.0 * r0 * r0 > 0.5 * sigma * sigma))
    throw std::invalid_argument(
        "calibrate_spike: no ring-shaped minimum for sigma=" + std::to_string(sigma) +
        ", r0=" + std::to_string(r0) + " (requires sigma < 2*r0)");
  return omega * omega * sigma * sigma / 8.0 * std::exp(2.0 * r0 * r0 / (sigma * sigma));
}

ModelSpec resolve_model(const PhysicalParams& physical, const TrapParams& trap) {
  require(trap.r0 > 0, "r0 must be positive");
  require(trap.omega > 0, "omega must be positive");
  require(trap.d0 > 0, "d0 must be positive");
  ModelSpec spec;
  spec.physical = physical;
  spec.rho = {1.0, physical.m2_amu / physical.m1_amu};
  spec.g = coupling_matrix(physical);
  spec.units = derive_units(physical);
  spec.omega = trap.omega;
  spec.r0 = trap.r0;
  spec.d0 = trap.d0;
  spec.sigma = trap.sigma.value_or(0.8 * trap.r0);
  require(spec.sigma > 0, "sigma must be positive");
  spec.v0 = calibrate_spike(spec.omega, spec.sigma, spec.r0);
  return spec;
}

std::vector<double> ring_potential(const Grid2D& grid, const ModelSpec& spec,
                                   int species) {
  require(species == 0 || species == 1, "species index must be 0 or 1");
  const double rho = spec.rho[static_cast<std::size_t>(species)];
  const double harm = 0.25 * rho * spec.omega * spec.omega;
  const double inv_s2 = 2.0 / (spec.sigma * spec.sigma);
  std::vector<double> v(grid.size());
#pragma omp parallel for schedule(static)
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    const double y = grid.y(iy);
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const double x = grid.x(ix);
      const double r2 = x * x + y * y;
      v[iy * grid.nx + ix] = harm * r2 + spec.v0 * std::exp(-inv_s2 * r2);
    }
  }
  return v;
}

void validate_grid_for_model(const Grid2D& grid, const ModelSpec& spec) {
  if (grid.extent_x() < 4.0 * spec.r0 || grid.extent_y() < 4.0 * spec.r0)
    throw std::invalid_argument(
        "grid extent " + std::to_string(grid.extent_x()) +
        " is below 4*r0 = " + std::to_string(4.0 * spec.r0) +
        "; the ring plus dispersing cloud would wrap around");
}

std::pair<ComplexField2D, ComplexField2D> initial_state(
    std::shared_ptr<const Grid2D> grid, const ModelSpec& spec) {
  validate_grid_for_model(*grid, spec);
  if (spec.d0 < 3.0 * grid->dx || spec.d0 < 3.0 * grid->dy)
    throw std::invalid_argument("initial peak waist d0=" + std::to_string(spec.d0) +
                                " is under-resolved (requires d0 >= 3*dx)");
  ComplexField2D psi = ComplexField2D::zeros(grid);
  const double inv_w2 = 1.0 / (spec.d0 * spec.d0);
  for (std::size_t iy = 0; iy < grid->ny; ++iy) {
    const double y = grid->y(iy);
    for (std::size_t ix = 0; ix < grid->nx; ++ix) {
      const double x = grid->x(ix);
      const double dp = (x - spec.r0) * (x - spec.r0) + y * y;
      const double dm = (x + spec.r0) * (x + spec.r0) + y * y;
      psi.at(ix, iy) = std::exp(-dp * inv_w2) + std::exp(-dm * inv_w2);
    }
  }
  const double nrm = integrate_abs2(psi);
  require(nrm > 0, "initial state has zero norm");
  const double s = 1.0 / std::sqrt(nrm);
  for (auto& v : psi.values) v *= s;
  ComplexField2D psi2 = psi;
  return {std::move(psi), std::move(psi2)};
}

}  // namespace ringsplit
