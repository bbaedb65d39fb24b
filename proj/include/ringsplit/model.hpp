// Physical-to-dimensionless conversion, couplings, ring-trap potential,
// spike calibration, and initial dual-Gaussian state preparation.
//
// Units: lengths in a_perp = sqrt(hbar/(2 m1 omega_perp)), time in
// 1/omega_perp, energy in hbar*omega_perp. Wavefunctions are normalized to
// one; atom numbers are carried inside the coupling matrix.
#pragma once

#include <array>
#include <optional>
#include <utility>

#include "ringsplit/grid.hpp"
#include "ringsplit/kernels.hpp"

namespace ringsplit {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
}  // namespace constants

// SI-side inputs.
struct PhysicalParams {
  double m1_amu = 85.0;
  double m2_amu = 87.0;
  double n1 = 1000.0;
  double n2 = 1000.0;
  double a11_m = 2.698e-9;
  double a22_m = 2.698e-9;
  double a12_m = 0.3 * 2.698e-9;
  double omega_perp = 2.0 * 3.14159265358979323846 * 130.0;  // rad/s
  double lambda = 0.01;  // aspect ratio entering the couplings
};

struct Units {
  double a_perp = 0.0;  // m
  double t_unit = 0.0;  // s
};

// Dimensionless trap/initial-state inputs. sigma defaults to 0.8*r0 when
// unset; v0 always comes from calibrate_spike. The omega default makes the
// radial ground-state width of the calibrated well equal d0/2, so the initial
// peaks sit in the radial ground state (no breathing).
struct TrapParams {
  double r0 = 12.0;
  double omega = 2.0113;  // omega_r / omega_perp
  std::optional<double> sigma;
  double d0 = 0.75;  // initial peak waist: psi ~ exp(-r^2/d0^2)
};

// Fully resolved dimensionless model.
struct ModelSpec {
  std::array<double, 2> rho{1.0, 87.0 / 85.0};  // rho[i] = m_i/m1
  kernels::CouplingMatrix g;
  double omega = 0.0;
  double v0 = 0.0;
  double sigma = 0.0;
  double r0 = 0.0;
  double d0 = 0.0;
  Units units;
  PhysicalParams physical;
};

Units derive_units(const PhysicalParams& p);

// g_ij = sqrt(2 pi lambda) (m1+m2) a_ij N_j / (m2 a_perp); g12/g21 = N2/N1.
kernels::CouplingMatrix coupling_matrix(const PhysicalParams& p);

// V0 such that V1(r) = rho1 omega^2 r^2/4 + V0 exp(-2 r^2/sigma^2) has a
// ring minimum exactly at r0:  V0 = (omega^2 sigma^2 / 8) exp(2 r0^2/sigma^2).
// Requires sigma < 2 r0 for a ring-shaped minimum branch.
double calibrate_spike(double omega, double sigma, double r0);

ModelSpec resolve_model(const PhysicalParams& physical, const TrapParams& trap);

// V_i(x,y) = rho_i omega^2 (x^2+y^2)/4 + V0 exp(-2(x^2+y^2)/sigma^2).
std::vector<double> ring_potential(const Grid2D& grid, const ModelSpec& spec,
                                   int species);

// Equal-weight superposition of two Gaussians of waist d0 at (+-r0, 0), each
// species normalized to one. Both species start in the identical state.
std::pair<ComplexField2D, ComplexField2D> initial_state(
    std::shared_ptr<const Grid2D> grid, const ModelSpec& spec);

// Grid must fit the ring plus the dispersing cloud: nx*dx >= 4*r0.
void validate_grid_for_model(const Grid2D& grid, const ModelSpec& spec);

}  // namespace ringsplit
