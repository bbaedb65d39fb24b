#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ringsplit/model.hpp"
#include "ringsplit/observables.hpp"

using namespace ringsplit;

TEST_CASE("derive_units reproduces the experimental scales") {
  const PhysicalParams p;
  const Units u = derive_units(p);
  // the quoted 0.675 um is rounded; the exact value is 0.67628 um
  CHECK(u.a_perp == doctest::Approx(0.675e-6).epsilon(5e-3));
  CHECK(u.t_unit == doctest::Approx(1.224e-3).epsilon(1e-3));

  PhysicalParams heavier = p;
  heavier.m1_amu *= 2.0;
  CHECK(derive_units(heavier).a_perp ==
        doctest::Approx(u.a_perp / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("coupling matrix") {
  PhysicalParams p;
  p.lambda = 1.0;  // the frozen reference value below was evaluated at unit aspect
  p.a12_m = 0.0;
  kernels::CouplingMatrix g = coupling_matrix(p);
  CHECK(g.g12 == 0.0);
  CHECK(g.g21 == 0.0);

  p.a12_m = 0.3 * p.a11_m;
  g = coupling_matrix(p);
  CHECK(g.g12 == doctest::Approx(g.g21).epsilon(1e-15));  // N1 == N2
  CHECK(g.g12 / g.g11 == doctest::Approx(0.3).epsilon(1e-12));

  // frozen value of an independent scalar evaluation of the formula at
  // lambda=1, m=85/87, a11=2.698e-9 m, N=1000, a_perp = 6.76281e-7 m
  CHECK(g.g11 == doctest::Approx(19.7703).epsilon(2e-4));

  // g12/g21 == N2/N1 exactly
  p.n2 = 1700.0;
  g = coupling_matrix(p);
  CHECK(g.g12 / g.g21 == doctest::Approx(1.7).epsilon(1e-14));

  p.lambda = -1.0;
  CHECK_THROWS_AS(coupling_matrix(p), std::invalid_argument);
}

TEST_CASE("spike calibration") {
  // closed form at sigma = r0, omega = 0.1: V0 = (0.01 r0^2 / 8) e^2
  const double r0 = 12.0;
  const double v0 = calibrate_spike(0.1, r0, r0);
  CHECK(v0 == doctest::Approx(0.01 * r0 * r0 / 8.0 * std::exp(2.0)).epsilon(1e-14));

  // cross-check against a numerical root of dV1/dr = 0 by bisection
  auto dv = [&](double r) {
    return 0.5 * 0.01 * r - v0 * 4.0 * r / (r0 * r0) * std::exp(-2.0 * r * r / (r0 * r0));
  };
  double lo = 0.5 * r0, hi = 1.9 * r0;
  REQUIRE(dv(lo) < 0.0);
  REQUIRE(dv(hi) > 0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (dv(mid) < 0.0 ? lo : hi) = mid;
  }
  CHECK(0.5 * (lo + hi) == doctest::Approx(r0).epsilon(1e-10));

  // omega -> 0 collapses the spike
  CHECK(calibrate_spike(1e-9, r0, r0) < 1e-14);

  // no ring-shaped minimum branch for a spike wider than 2 r0
  CHECK_THROWS_AS(calibrate_spike(0.5, 25.0, 12.0), std::invalid_argument);
}

TEST_CASE("resolved model: calibrated minimum and curvature at r0") {
  const PhysicalParams phys;
  TrapParams trap;  // defaults: r0 = 12, omega = 2.0113, sigma = 0.8 r0
  const ModelSpec spec = resolve_model(phys, trap);
  CHECK(spec.rho[0] == 1.0);
  CHECK(spec.rho[1] == doctest::Approx(87.0 / 85.0).epsilon(1e-15));
  CHECK(spec.sigma == doctest::Approx(0.8 * 12.0));

  auto v1 = [&](double r) {
    return 0.25 * spec.omega * spec.omega * r * r +
           spec.v0 * std::exp(-2.0 * r * r / (spec.sigma * spec.sigma));
  };
  const double h = 1e-6;
  const double d1 = (v1(spec.r0 + h) - v1(spec.r0 - h)) / (2.0 * h);
  const double d2 = (v1(spec.r0 + h) - 2.0 * v1(spec.r0) + v1(spec.r0 - h)) / (h * h);
  CHECK(std::abs(d1) < 1e-6);
  CHECK(d2 > 0.0);

  // recomputing g from the stored physical parameters reproduces the matrix
  const kernels::CouplingMatrix g2 = coupling_matrix(spec.physical);
  CHECK(g2.g11 == doctest::Approx(spec.g.g11).epsilon(1e-12));
  CHECK(g2.g12 == doctest::Approx(spec.g.g12).epsilon(1e-12));
}

TEST_CASE("ring potential field") {
  const PhysicalParams phys;
  TrapParams trap;
  const ModelSpec spec = resolve_model(phys, trap);
  const Grid2D grid = make_grid(64, 1.0);

  const auto v = ring_potential(grid, spec, 0);
  // at the origin the harmonic term vanishes and only the spike remains
  CHECK(v[grid.index(32, 32)] == doctest::Approx(spec.v0).epsilon(1e-14));

  ModelSpec bare = spec;
  bare.v0 = 0.0;
  const auto vh = ring_potential(grid, bare, 1);
  const double x = grid.x(40), y = grid.y(20);
  CHECK(vh[grid.index(40, 20)] ==
        doctest::Approx(0.25 * spec.rho[1] * spec.omega * spec.omega * (x * x + y * y))
            .epsilon(1e-14));

  CHECK_THROWS_AS(ring_potential(grid, spec, 2), std::invalid_argument);
}

TEST_CASE("initial state: normalization, symmetry, peak placement") {
  const PhysicalParams phys;
  TrapParams trap;
  const ModelSpec spec = resolve_model(phys, trap);
  auto grid = std::make_shared<const Grid2D>(make_grid(256, 0.1875));
  const auto [psi1, psi2] = initial_state(grid, spec);

  CHECK(std::abs(integrate_abs2(psi1) - 1.0) < 1e-10);
  CHECK(std::abs(integrate_abs2(psi2) - 1.0) < 1e-10);

  // species start identical
  double max_diff = 0.0;
  for (std::size_t i = 0; i < psi1.size(); ++i)
    max_diff = std::max(max_diff, std::abs(psi1.values[i] - psi2.values[i]));
  CHECK(max_diff < 1e-12);

  // density symmetric under (x,y) -> (-x,-y); ix = 0 has no mirror partner
  // on a centered even grid, so check the interior
  const auto rho = density(psi1);
  double sym_err = 0.0;
  for (std::size_t iy = 1; iy < grid->ny; ++iy)
    for (std::size_t ix = 1; ix < grid->nx; ++ix)
      sym_err = std::max(sym_err,
                         std::abs(rho[grid->index(ix, iy)] -
                                  rho[grid->index(grid->nx - ix, grid->ny - iy)]));
  CHECK(sym_err < 1e-12);

  // argmax of the density at the grid points nearest (+-r0, 0)
  std::size_t best = 0;
  for (std::size_t i = 1; i < rho.size(); ++i)
    if (rho[i] > rho[best]) best = i;
  const double bx = grid->x(best % grid->nx);
  const double by = grid->y(best / grid->nx);
  CHECK(std::abs(std::abs(bx) - spec.r0) <= 0.5 * grid->dx + 1e-12);
  CHECK(std::abs(by) <= 0.5 * grid->dy + 1e-12);
}

TEST_CASE("initial state guards") {
  const PhysicalParams phys;
  TrapParams trap;
  const ModelSpec spec = resolve_model(phys, trap);

  // under-resolved peak: d0 < 3 dx
  auto coarse = std::make_shared<const Grid2D>(make_grid(128, 0.5));
  CHECK_THROWS_WITH_AS(initial_state(coarse, spec), doctest::Contains("under-resolved"),
                       std::invalid_argument);

  // domain smaller than 4 r0
  auto small = std::make_shared<const Grid2D>(make_grid(128, 0.2));
  CHECK_THROWS_WITH_AS(initial_state(small, spec), doctest::Contains("4*r0"),
                       std::invalid_argument);
}
