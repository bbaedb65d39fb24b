#include "ringsplit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace ringsplit {

double analytic_revival_time(double r0, int species, int winding, double mass_ratio) {
  if (!(r0 > 0)) throw std::invalid_argument("r0 must be positive");
  if (winding < 1) throw std::invalid_argument("winding number must be >= 1");
  if (species != 0 && species != 1) throw std::invalid_argument("species must be 0 or 1");
  const double base = std::numbers::pi * r0 * r0 * winding;
  return species == 0 ? base : mass_ratio * base;
}

double analytic_revival_difference(double r0, double mass_ratio) {
  if (!(r0 > 0)) throw std::invalid_argument("r0 must be positive");
  return (mass_ratio - 1.0) * std::numbers::pi * r0 * r0;
}

double free_width(double w_initial, double t, int species, double mass_ratio) {
  if (!(w_initial > 0)) throw std::invalid_argument("initial width must be positive");
  if (t < 0) throw std::invalid_argument("t must be non-negative");
  const double rho = species == 0 ? 1.0 : mass_ratio;
  const double spread = 2.0 * t / (rho * w_initial);
  return std::sqrt(w_initial * w_initial + spread * spread);
}

double fringe_separation(double t, double d_initial, int species, double mass_ratio) {
  if (!(d_initial > 0)) throw std::invalid_argument("separation D must be positive");
  const double rho = species == 0 ? 1.0 : mass_ratio;
  return 4.0 * std::numbers::pi * t / (rho * d_initial);
}

SimulationResult run_simulation(const RunConfig& cfg, const SimulationHooks* hooks) {
  SimulationResult res;
  res.spec = cfg.resolve();
  auto grid = std::make_shared<const Grid2D>(make_grid(cfg.numerics.n, cfg.numerics.dx));
  res.grid = grid;
  auto [psi1, psi2] = initial_state(grid, res.spec);
  Propagator prop(std::move(psi1), std::move(psi2), res.spec);
  EvolutionConfig ecfg;
  ecfg.dt = cfg.numerics.dt;
  ecfg.n_steps = cfg.numerics.n_steps;
  ecfg.sample_every = cfg.numerics.sample_every;
  if (hooks && hooks->on_sample) ecfg.on_sample = hooks->on_sample;
  res.series = prop.evolve(ecfg);
  return res;
}

namespace {

// Grid sized for one ring study: fixed point count, extent covering the ring
// comfortably while keeping the initial peaks resolved.
RunConfig cell_config(const RunConfig& base, double r0, double a12, std::size_t n,
                      std::size_t n_steps, std::size_t sample_every) {
  RunConfig c = base;
  c.r0 = r0;
  c.a12 = a12;
  c.sigma.reset();  // re-derive sigma from the cell's r0
  c.numerics.n = n;
  c.numerics.dx = std::max(4.0 * r0, 48.0) / static_cast<double>(n);
  c.numerics.n_steps = n_steps;
  c.numerics.sample_every = sample_every;
  return c;
}

std::size_t steps_to_reach(double t_end, double dt) {
  return static_cast<std::size_t>(std::ceil(t_end / dt));
}

RevivalPoint measure_pair(const RunConfig& cfg, double r0, double a12, double window) {
  RevivalPoint p;
  p.r0 = r0;
  p.a12 = a12;
  try {
    const SimulationResult sim = run_simulation(cfg);
    const double ratio = cfg.m2 / cfg.m1;
    p.t1 = measure_revival_time(sim.series.t, sim.series.ac1,
                                analytic_revival_time(r0, 0, 1, ratio), window);
    p.t2 = measure_revival_time(sim.series.t, sim.series.ac2,
                                analytic_revival_time(r0, 1, 1, ratio), window);
    p.ok = true;
  } catch (const std::exception& e) {
    p.message = e.what();
  }
  return p;
}

}  // namespace

std::vector<RevivalPoint> revival_difference_curve(const RunConfig& base,
                                                   const std::vector<double>& r0_values,
                                                   double a12, double window) {
  std::vector<RevivalPoint> out;
  out.reserve(r0_values.size());
  for (double r0 : r0_values) {
    const double ratio = base.m2 / base.m1;
    const double horizon = analytic_revival_time(r0, 1, 1, ratio) * (1.0 + window + 0.05);
    const RunConfig cfg = cell_config(base, r0, a12, base.sweep.n,
                                      steps_to_reach(horizon, base.numerics.dt), 1);
    out.push_back(measure_pair(cfg, r0, a12, window));
  }
  return out;
}

std::vector<RevivalPoint> revival_vs_interaction(const RunConfig& base, double r0,
                                                 const std::vector<double>& a12_values,
                                                 double window) {
  std::vector<RevivalPoint> out;
  out.reserve(a12_values.size());
  const double ratio = base.m2 / base.m1;
  const double horizon = analytic_revival_time(r0, 1, 1, ratio) * (1.0 + window + 0.05);
  for (double a12 : a12_values) {
    const RunConfig cfg = cell_config(base, r0, a12, base.sweep.n,
                                      steps_to_reach(horizon, base.numerics.dt), 1);
    out.push_back(measure_pair(cfg, r0, a12, window));
  }
  return out;
}

SeparabilityPeaks separability_scan(const TimeSeries& ts, double revival_time_2,
                                    double window) {
  SeparabilityPeaks out;
  for (SeparabilityTarget target :
       {SeparabilityTarget::s_half, SeparabilityTarget::s_one,
        SeparabilityTarget::s_three_half, SeparabilityTarget::s_two}) {
    SeparabilityPeak p;
    p.label = target;
    const double guess = target_multiple(target) * revival_time_2;
    const double lo = guess * (1.0 - window);
    const double hi = guess * (1.0 + window);
    // label by proximity to the guess among the dominant peaks of the window
    // (adjacent half-revival peaks can fall inside a wide window)
    double tallest = -1.0;
    for (std::size_t i = 1; i + 1 < ts.t.size(); ++i) {
      if (ts.t[i] < lo || ts.t[i] > hi) continue;
      if (!(ts.sep[i] > ts.sep[i - 1] && ts.sep[i] >= ts.sep[i + 1])) continue;
      tallest = std::max(tallest, ts.sep[i]);
    }
    double best = -1.0;
    double best_dist = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 1; i + 1 < ts.t.size(); ++i) {
      if (ts.t[i] < lo || ts.t[i] > hi) continue;
      if (!(ts.sep[i] > ts.sep[i - 1] && ts.sep[i] >= ts.sep[i + 1])) continue;
      if (ts.sep[i] < 0.75 * tallest) continue;
      const double dist = std::abs(ts.t[i] - guess);
      if (best < 0.0 || dist < best_dist) {
        best = ts.sep[i];
        best_dist = dist;
        best_i = i;
      }
    }
    if (best >= 0.0) {
      p.found = true;
      // parabolic refinement of the peak, then the full width at 90% of it
      const double t0 = ts.t[best_i - 1], t1 = ts.t[best_i], t2 = ts.t[best_i + 1];
      const double y0 = ts.sep[best_i - 1], y1 = ts.sep[best_i], y2 = ts.sep[best_i + 1];
      const double d1 = (y1 - y0) / (t1 - t0);
      const double d2 = (y2 - y1) / (t2 - t1);
      const double curv = (d2 - d1) / (t2 - t0);
      if (curv != 0.0) {
        p.t = 0.5 * (t0 + t1 - d1 / curv);
        p.value = y0 + d1 * (p.t - t0) + curv * (p.t - t0) * (p.t - t1);
      } else {
        p.t = t1;
        p.value = y1;
      }
      const double level = 0.9 * p.value;
      double tl = ts.t.front(), tr = ts.t.back();
      for (std::size_t j = best_i; j-- > 0;) {
        if (ts.sep[j] <= level) {
          const double f = (level - ts.sep[j]) / (ts.sep[j + 1] - ts.sep[j]);
          tl = ts.t[j] + f * (ts.t[j + 1] - ts.t[j]);
          break;
        }
      }
      for (std::size_t j = best_i + 1; j < ts.t.size(); ++j) {
        if (ts.sep[j] <= level) {
          const double f = (ts.sep[j - 1] - level) / (ts.sep[j - 1] - ts.sep[j]);
          tr = ts.t[j - 1] + f * (ts.t[j] - ts.t[j - 1]);
          break;
        }
      }
      p.width90 = tr - tl;
    }
    out.peaks.push_back(p);
  }
  return out;
}

SweepResult sweep(const RunConfig& base) {
  SweepResult res;
  res.r0_values = base.sweep.r0_values;
  res.a12_values = base.sweep.a12_values;
  res.target = base.sweep.target;
  const std::size_t nr = res.r0_values.size();
  const std::size_t na = res.a12_values.size();
  res.cells.resize(nr * na);
  const double ratio = base.m2 / base.m1;
  const double mult = target_multiple(base.sweep.target);

  // independent cells; inner kernels fall back to serial inside the team
#pragma omp parallel for collapse(2) schedule(dynamic)
  for (std::size_t ir = 0; ir < nr; ++ir) {
    for (std::size_t ia = 0; ia < na; ++ia) {
      const double r0 = res.r0_values[ir];
      const double a12 = res.a12_values[ia];
      SweepCell cell;
      cell.r0 = r0;
      cell.a12 = a12;
      try {
        const double guess = mult * analytic_revival_time(r0, 1, 1, ratio);
        const double horizon = guess * 1.3;
        const RunConfig cfg =
            cell_config(base, r0, a12, base.sweep.n,
                        steps_to_reach(horizon, base.numerics.dt),
                        base.sweep.sample_every);
        const ModelSpec spec = cfg.resolve();
        cell.sigma = spec.sigma;
        cell.v0 = spec.v0;
        cell.g11 = spec.g.g11;
        cell.g12 = spec.g.g12;
        const SimulationResult sim = run_simulation(cfg);
        const SeparabilityPeaks peaks =
            separability_scan(sim.series, analytic_revival_time(r0, 1, 1, ratio));
        for (const auto& p : peaks.peaks) {
          if (p.label == base.sweep.target && p.found) {
            cell.yield = p.value;
            cell.peak_time = p.t;
            cell.ok = true;
          }
        }
        if (!cell.ok) cell.message = "target separability peak not found";
      } catch (const std::exception& e) {
        cell.message = e.what();
      }
      res.cells[ir * na + ia] = std::move(cell);
    }
  }
  return res;
}

namespace {

struct Segment {
  ContourPoint a, b;
};

ContourPoint interp(double xa, double ya, double va, double xb, double yb, double vb,
                    double level) {
  const double f = (level - va) / (vb - va);
  return {xa + f * (xb - xa), ya + f * (yb - ya)};
}

// Joins marching-squares segments into polylines by walking shared endpoints.
std::vector<std::vector<ContourPoint>> join_segments(std::vector<Segment> segs) {
  const auto close = [](const ContourPoint& p, const ContourPoint& q) {
    return std::abs(p.r0 - q.r0) < 1e-12 && std::abs(p.a12 - q.a12) < 1e-12;
  };
  std::vector<std::vector<ContourPoint>> lines;
  std::vector<bool> used(segs.size(), false);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::vector<ContourPoint> line{segs[i].a, segs[i].b};
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t j = 0; j < segs.size(); ++j) {
        if (used[j]) continue;
        if (close(line.back(), segs[j].a)) {
          line.push_back(segs[j].b);
        } else if (close(line.back(), segs[j].b)) {
          line.push_back(segs[j].a);
        } else if (close(line.front(), segs[j].b)) {
          line.insert(line.begin(), segs[j].a);
        } else if (close(line.front(), segs[j].a)) {
          line.insert(line.begin(), segs[j].b);
        } else {
          continue;
        }
        used[j] = true;
        grew = true;
      }
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

std::vector<ContourSet> extract_contours(const SweepResult& result,
                                         const std::vector<double>& levels) {
  const auto& xs = result.r0_values;
  const auto& ys = result.a12_values;
  std::vector<ContourSet> out;
  for (double level : levels) {
    ContourSet cs;
    cs.level = level;
    std::vector<Segment> segs;
    if (xs.size() >= 2 && ys.size() >= 2) {
      for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
          const auto& c00 = result.cell(i, j);
          const auto& c10 = result.cell(i + 1, j);
          const auto& c01 = result.cell(i, j + 1);
          const auto& c11 = result.cell(i + 1, j + 1);
          // failed cells count as below any level
          const double v00 = c00.ok ? c00.yield : -1.0;
          const double v10 = c10.ok ? c10.yield : -1.0;
          const double v01 = c01.ok ? c01.yield : -1.0;
          const double v11 = c11.ok ? c11.yield : -1.0;
          int mask = 0;
          if (v00 >= level) mask |= 1;
          if (v10 >= level) mask |= 2;
          if (v11 >= level) mask |= 4;
          if (v01 >= level) mask |= 8;
          if (mask == 0 || mask == 15) continue;
          // edge crossings: bottom (00-10), right (10-11), top (01-11), left (00-01)
          ContourPoint pb, pr, pt, pl;
          const bool eb = ((mask & 1) != 0) != ((mask & 2) != 0);
          const bool er = ((mask & 2) != 0) != ((mask & 4) != 0);
          const bool et = ((mask & 8) != 0) != ((mask & 4) != 0);
          const bool el = ((mask & 1) != 0) != ((mask & 8) != 0);
          if (eb) pb = interp(xs[i], ys[j], v00, xs[i + 1], ys[j], v10, level);
          if (er) pr = interp(xs[i + 1], ys[j], v10, xs[i + 1], ys[j + 1], v11, level);
          if (et) pt = interp(xs[i], ys[j + 1], v01, xs[i + 1], ys[j + 1], v11, level);
          if (el) pl = interp(xs[i], ys[j], v00, xs[i], ys[j + 1], v01, level);
          // saddle cases resolved by the cell-center average
          if (mask == 5 || mask == 10) {
            const double center = 0.25 * (v00 + v10 + v01 + v11);
            const bool center_high = center >= level;
            if ((mask == 5) == center_high) {
              segs.push_back({pb, pr});
              segs.push_back({pt, pl});
            } else {
              segs.push_back({pb, pl});
              segs.push_back({pt, pr});
            }
            continue;
          }
          std::vector<ContourPoint> pts;
          if (eb) pts.push_back(pb);
          if (er) pts.push_back(pr);
          if (et) pts.push_back(pt);
          if (el) pts.push_back(pl);
          if (pts.size() == 2) segs.push_back({pts[0], pts[1]});
        }
      }
    }
    cs.polylines = join_segments(std::move(segs));
    out.push_back(std::move(cs));
  }
  return out;
}

void label_fractional_revivals(PeakSet& peaks, double revival_time, int max_q,
                               double tol) {
  for (auto& p : peaks.peaks) {
    double best_err = tol * revival_time;
    int best_p = 0, best_q = 0;
    for (int q = 1; q <= max_q; ++q) {
      for (int num = 1; num <= static_cast<int>(2.5 * q); ++num) {
        if (std::gcd(num, q) != 1) continue;
        const double predicted = revival_time * num / q;
        const double err = std::abs(p.t - predicted);
        if (err < best_err) {
          best_err = err;
          best_p = num;
          best_q = q;
        }
      }
    }
    if (best_q > 0)
      p.label = "(" + std::to_string(best_p) + "/" + std::to_string(best_q) + ")";
  }
}

}  // namespace ringsplit
