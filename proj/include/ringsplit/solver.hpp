// Strang-split spectral propagator for the coupled two-species equations:
//   i d(psi_i)/dt = [-(m1/2m_i) laplacian + sum_j g_ij |psi_j|^2 + V_i] psi_i
// Kinetic half-steps act in spectral space, the nonlinear/potential full step
// in coordinate space with both densities frozen (the substep is exact: the
// pointwise phase rotation leaves each density invariant). Consecutive
// kinetic half-steps are fused except at sampling instants.
#pragma once

#include <cstddef>
#include <functional>
#include <memory>

#include "ringsplit/fft.hpp"
#include "ringsplit/grid.hpp"
#include "ringsplit/model.hpp"
#include "ringsplit/observables.hpp"

namespace ringsplit {

struct BlowUpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EvolutionConfig {
  double dt = 0.0915;         // 1/omega_perp
  std::size_t n_steps = 16384;
  std::size_t sample_every = 1;
  // Invoked at every sample instant (including t=0) with a proper state.
  std::function<void(std::size_t step, double t, const ComplexField2D& psi1,
                     const ComplexField2D& psi2)> on_sample;
};

class Propagator {
 public:
  // Takes ownership of the initial fields; keeps a copy as the t=0 reference
  // for the autocorrelation series.
  Propagator(ComplexField2D psi1, ComplexField2D psi2, const ModelSpec& spec,
             bool parallel = true);

  // One unfused Strang step. Rebuilds the cached spectral multipliers when dt
  // changes. Throws BlowUpError with the step index on NaN/Inf.
  void step(double dt);

  // n_steps fused steps, sampling every sample_every steps; returns the
  // collected series (t=0 row included). t = step_count*dt exactly.
  TimeSeries evolve(const EvolutionConfig& cfg);

  // E = sum_i int[(m1/2m_i)|grad psi_i|^2 + V_i|psi_i|^2 + g_ii|psi_i|^4/2]
  //     + (g12+g21)/2 int |psi1|^2|psi2|^2, gradients evaluated spectrally.
  double energy();

  const ComplexField2D& psi1() const { return psi1_; }
  const ComplexField2D& psi2() const { return psi2_; }
  const ComplexField2D& psi1_initial() const { return psi1_0_; }
  const ComplexField2D& psi2_initial() const { return psi2_0_; }
  double time() const { return static_cast<double>(step_count_) * dt_; }
  std::size_t step_count() const { return step_count_; }
  const ModelSpec& spec() const { return spec_; }

 private:
  void ensure_phases(double dt);
  void check_finite(std::size_t step);
  double boundary_density_max() const;

  std::shared_ptr<const Grid2D> grid_;
  ModelSpec spec_;
  bool parallel_;
  Fft2d fft_;
  ComplexField2D psi1_, psi2_;
  ComplexField2D psi1_0_, psi2_0_;
  std::vector<double> v1_, v2_;      // cached potentials
  std::vector<double> k2_;           // kx^2 + ky^2 table
  std::vector<cplx> kin_half_[2];    // exp(-i k^2 dt / (4 rho_i))
  std::vector<cplx> kin_full_[2];    // exp(-i k^2 dt / (2 rho_i))
  double cached_dt_ = 0.0;
  double dt_ = 0.0;
  std::size_t step_count_ = 0;
  bool boundary_warned_ = false;
};

}  // namespace ringsplit
