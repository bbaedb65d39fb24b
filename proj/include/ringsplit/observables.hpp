// Autocorrelation, separability, peak detection, revival-time measurement.
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringsplit/grid.hpp"

namespace ringsplit {

// Sampled observables of one evolution. All series share the length of t.
struct TimeSeries {
  std::vector<double> t;      // 1/omega_perp
  std::vector<double> ac1;    // |<psi1(0)|psi1(t)>|^2
  std::vector<double> ac2;
  std::vector<double> sep;    // S = 1 - Delta
  std::vector<double> norm1;
  std::vector<double> norm2;
  std::vector<double> energy;

  std::size_t rows() const { return t.size(); }
};

struct Peak {
  double t = 0.0;
  double height = 0.0;
  double width = 0.0;  // at half prominence
  std::string label;
};

struct PeakSet {
  std::vector<Peak> peaks;  // sorted by time
};

// |integral conj(psi0) psit dxdy|^2 via grid quadrature.
double autocorrelation(const ComplexField2D& psi0, const ComplexField2D& psit);

// S = 1 - Delta, Delta = [int rho1 rho2]^2 / (int rho1^2 * int rho2^2);
// 0 <= S <= 1 by Cauchy-Schwarz. Rejects identically zero densities.
double separability(const ComplexField2D& psi1, const ComplexField2D& psi2);

// Local maxima with prominence >= min_prominence * max(series), refined by
// 3-point parabolic interpolation. Plateau tie-break: earliest sample wins.
PeakSet detect_peaks(std::span<const double> t, std::span<const double> y,
                     double min_prominence);

// Time of the highest local maximum inside
// [guess*(1-window), guess*(1+window)]. Throws RevivalNotFound otherwise.
struct RevivalNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};
double measure_revival_time(std::span<const double> t, std::span<const double> y,
                            double analytic_guess, double window);

}  // namespace ringsplit
