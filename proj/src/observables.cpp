#include "ringsplit/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ringsplit/kernels.hpp"

namespace ringsplit {

namespace {

void require_same_grid(const ComplexField2D& a, const ComplexField2D& b) {
  const Grid2D& ga = *a.grid;
  const Grid2D& gb = *b.grid;
  if (ga.nx != gb.nx || ga.ny != gb.ny || ga.dx != gb.dx || ga.dy != gb.dy)
    throw std::invalid_argument("fields live on different grids");
}

// Vertex of the parabola through three samples; exact for quadratic data.
// Returns the middle point unchanged when the samples are collinear.
struct ParabolicVertex {
  double t;
  double y;
};

ParabolicVertex refine(double t0, double y0, double t1, double y1, double t2,
                       double y2) {
  const double d1 = (y1 - y0) / (t1 - t0);
  const double d2 = (y2 - y1) / (t2 - t1);
  const double curv = (d2 - d1) / (t2 - t0);
  if (curv == 0.0) return {t1, y1};
  const double tv = 0.5 * (t0 + t1 - d1 / curv);
  const double yv = y0 + d1 * (tv - t0) + curv * (tv - t0) * (tv - t1);
  return {tv, yv};
}

}  // namespace

double autocorrelation(const ComplexField2D& psi0, const ComplexField2D& psit) {
  require_same_grid(psi0, psit);
  const cplx overlap = kernels::par::inner_product(psi0.values.data(),
                                                   psit.values.data(), psi0.size()) *
                       psi0.grid->cell_area();
  return std::norm(overlap);
}

double separability(const ComplexField2D& psi1, const ComplexField2D& psi2) {
  require_same_grid(psi1, psi2);
  const auto m = kernels::par::pair_moments(psi1.values.data(), psi2.values.data(),
                                            psi1.size());
  if (m.s11 <= 0.0 || m.s22 <= 0.0)
    throw std::invalid_argument("separability: identically zero density");
  const double delta = (m.s12 * m.s12) / (m.s11 * m.s22);  // cell areas cancel
  return 1.0 - delta;
}

PeakSet detect_peaks(std::span<const double> t, std::span<const double> y,
                     double min_prominence) {
  if (t.size() != y.size()) throw std::invalid_argument("detect_peaks: length mismatch");
  if (t.size() < 3) throw std::invalid_argument("detect_peaks: need >= 3 samples");
  if (!(min_prominence > 0.0 && min_prominence < 1.0))
    throw std::invalid_argument("detect_peaks: min_prominence must be in (0,1)");
  const std::size_t n = y.size();
  const double y_max = *std::max_element(y.begin(), y.end());
  const double y_min = *std::min_element(y.begin(), y.end());
  const double scale = std::max(std::abs(y_max), std::abs(y_min));
  PeakSet out;
  if (scale == 0.0) return out;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    // strict rise from the left, non-rise to the right: the first sample of a
    // plateau wins the tie
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;

    // prominence: lowest valley between the peak and higher ground on each side
    double left_min = y[i];
    for (std::size_t j = i; j-- > 0;) {
      left_min = std::min(left_min, y[j]);
      if (y[j] > y[i]) break;
    }
    double right_min = y[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      right_min = std::min(right_min, y[j]);
      if (y[j] > y[i]) break;
    }
    const double prominence = y[i] - std::max(left_min, right_min);
    if (prominence < min_prominence * scale) continue;

    Peak p;
    const auto v = refine(t[i - 1], y[i - 1], t[i], y[i], t[i + 1], y[i + 1]);
    p.t = v.t;
    p.height = v.y;

    // width where the series crosses height - prominence/2, linearly interpolated
    const double level = y[i] - 0.5 * prominence;
    double tl = t.front();
    for (std::size_t j = i; j-- > 0;) {
      if (y[j] <= level) {
        const double f = (level - y[j]) / (y[j + 1] - y[j]);
        tl = t[j] + f * (t[j + 1] - t[j]);
        break;
      }
    }
    double tr = t.back();
    for (std::size_t j = i + 1; j < n; ++j) {
      if (y[j] <= level) {
        const double f = (y[j - 1] - level) / (y[j - 1] - y[j]);
        tr = t[j - 1] + f * (t[j] - t[j - 1]);
        break;
      }
    }
    p.width = tr - tl;
    out.peaks.push_back(std::move(p));
  }
  return out;
}

double measure_revival_time(std::span<const double> t, std::span<const double> y,
                            double analytic_guess, double window) {
  if (!(window > 0.0 && window <= 0.5))
    throw std::invalid_argument("measure_revival_time: window must be in (0, 0.5]");
  if (t.empty() || analytic_guess < t.front() || analytic_guess > t.back())
    throw std::invalid_argument("measure_revival_time: guess outside series span");
  const double lo = analytic_guess * (1.0 - window);
  const double hi = analytic_guess * (1.0 + window);
  double best_h = -std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  bool found = false;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] < lo || t[i] > hi) continue;
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    const auto v = refine(t[i - 1], y[i - 1], t[i], y[i], t[i + 1], y[i + 1]);
    if (v.y > best_h) {
      best_h = v.y;
      best_t = v.t;
      found = true;
    }
  }
  if (!found)
    throw RevivalNotFound("revival not found in [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  return best_t;
}

}  // namespace ringsplit
