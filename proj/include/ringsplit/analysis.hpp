// Closed-form revival/width formulas, revival-time studies, the separability
// scan, the (r0, a12) sweep, and iso-yield contour extraction.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ringsplit/config.hpp"
#include "ringsplit/observables.hpp"
#include "ringsplit/solver.hpp"

namespace ringsplit {

// --- closed-form oracle formulas -------------------------------------------

// T_R = pi r0^2 p for species 1, (m2/m1) pi r0^2 p for species 2.
double analytic_revival_time(double r0, int species, int winding,
                             double mass_ratio = 87.0 / 85.0);

// (m2/m1 - 1) pi r0^2.
double analytic_revival_difference(double r0, double mass_ratio = 87.0 / 85.0);

// Free-dispersion waist: sqrt(w^2 + (2 t/(rho_i w))^2).
double free_width(double w_initial, double t, int species,
                  double mass_ratio = 87.0 / 85.0);

// Effective fringe separation 4 pi t / D (species 1), 4 pi m1 t/(m2 D).
double fringe_separation(double t, double d_initial, int species,
                         double mass_ratio = 87.0 / 85.0);

// --- simulation-driven studies ----------------------------------------------

struct SimulationResult {
  TimeSeries series;
  ModelSpec spec;
  std::shared_ptr<const Grid2D> grid;
};

struct SimulationHooks {
  // Sample-instant callback; used for snapshot export.
  std::function<void(std::size_t step, double t, const ComplexField2D&,
                     const ComplexField2D&)> on_sample;
};

// One full evolution from a resolved config (single-run keys only).
SimulationResult run_simulation(const RunConfig& cfg,
                                const SimulationHooks* hooks = nullptr);

struct RevivalPoint {
  double r0 = 0.0;
  double a12 = 0.0;          // units of a11
  double t1 = 0.0, t2 = 0.0; // measured revival times
  bool ok = false;
  std::string message;
  double delta() const { return t2 - t1; }
};

// Per-r0 revival times at fixed a12; per-point failures are flagged and the
// curve continues.
std::vector<RevivalPoint> revival_difference_curve(const RunConfig& base,
                                                   const std::vector<double>& r0_values,
                                                   double a12,
                                                   double window = 0.15);

// Per-a12 revival times at fixed r0.
std::vector<RevivalPoint> revival_vs_interaction(const RunConfig& base, double r0,
                                                 const std::vector<double>& a12_values,
                                                 double window = 0.15);

struct SeparabilityPeak {
  SeparabilityTarget label;
  double t = 0.0;
  double value = 0.0;
  double width90 = 0.0;  // full width at 90% of the peak value
  bool found = false;
};

struct SeparabilityPeaks {
  std::vector<SeparabilityPeak> peaks;  // S_1/2, S_1, S_3/2, S_2 in time order
};

// Labels the prominent S(t) peaks by proximity to {1/2,1,3/2,2} * T_R2.
SeparabilityPeaks separability_scan(const TimeSeries& ts, double revival_time_2,
                                    double window = 0.25);

struct SweepCell {
  double r0 = 0.0;
  double a12 = 0.0;     // units of a11
  double yield = 0.0;   // separability at the targeted peak
  double peak_time = 0.0;
  double sigma = 0.0;   // resolved per-cell model fields
  double v0 = 0.0;
  double g11 = 0.0;
  double g12 = 0.0;
  bool ok = false;
  std::string message;
};

struct SweepResult {
  std::vector<double> r0_values;
  std::vector<double> a12_values;
  SeparabilityTarget target = SeparabilityTarget::s_one;
  std::vector<SweepCell> cells;  // row-major over (r0, a12)

  const SweepCell& cell(std::size_t i_r0, std::size_t i_a12) const {
    return cells[i_r0 * a12_values.size() + i_a12];
  }
};

// Full simulation per cell; cells run independently (parallel up to the
// configured limit) and deterministically.
SweepResult sweep(const RunConfig& base);

// --- contour extraction ------------------------------------------------------

struct ContourPoint {
  double r0 = 0.0;
  double a12 = 0.0;
};

struct ContourSet {
  double level = 0.0;
  std::vector<std::vector<ContourPoint>> polylines;
};

// Marching squares with bilinear edge interpolation on the yield table.
// Deterministic cell scan order; failed cells are treated as below any level.
std::vector<ContourSet> extract_contours(const SweepResult& result,
                                         const std::vector<double>& levels);

// Fractional-revival tags: peaks within tol*T_R of (p/q)*T_R (q <= max_q,
// p/q <= 2.5) get labeled "(p/q)".
void label_fractional_revivals(PeakSet& peaks, double revival_time,
                               int max_q = 8, double tol = 0.02);

}  // namespace ringsplit
