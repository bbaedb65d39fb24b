// ringsplit command-line interface: simulate, sweep, analyze, oracle, check.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <omp.h>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ringsplit/analysis.hpp"
#include "ringsplit/config.hpp"
#include "ringsplit/io.hpp"
#include "ringsplit/selfcheck.hpp"

namespace fs = std::filesystem;
using namespace ringsplit;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  int threads = 0;

  // per-key overrides mirroring the config file
  std::optional<double> r0, a12, omega, sigma, d0, lambda;
  std::optional<double> m1, m2, n1, n2, a11, a22, omega_perp;
  std::optional<double> dx, dt;
  std::optional<std::size_t> n, n_steps, sample_every;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "configuration file");
  cmd->add_option("--out", o.out_dir, "output directory (overrides [output] out_dir)");
  cmd->add_option("--threads", o.threads,
                  "worker threads (fallback: RINGSPLIT_THREADS, then all cores)");
  cmd->add_option("--r0", o.r0, "ring radius (a_perp)");
  cmd->add_option("--a12", o.a12, "interspecies scattering length (units of a11)");
  cmd->add_option("--omega", o.omega, "omega_r/omega_perp");
  cmd->add_option("--sigma", o.sigma, "spike waist (a_perp)");
  cmd->add_option("--d0", o.d0, "initial peak waist (a_perp)");
  cmd->add_option("--lambda", o.lambda, "aspect ratio in the couplings");
  cmd->add_option("--m1", o.m1, "species-1 mass (atomic mass units)");
  cmd->add_option("--m2", o.m2, "species-2 mass (atomic mass units)");
  cmd->add_option("--n1", o.n1, "species-1 atom number");
  cmd->add_option("--n2", o.n2, "species-2 atom number");
  cmd->add_option("--a11", o.a11, "species-1 scattering length (m)");
  cmd->add_option("--a22", o.a22, "species-2 scattering length (m)");
  cmd->add_option("--omega-perp", o.omega_perp, "transverse trap frequency (rad/s)");
  cmd->add_option("--n", o.n, "grid points per axis (power of two)");
  cmd->add_option("--dx", o.dx, "grid step (a_perp)");
  cmd->add_option("--dt", o.dt, "time step (1/omega_perp)");
  cmd->add_option("--n-steps", o.n_steps, "number of time steps");
  cmd->add_option("--sample-every", o.sample_every, "sampling stride in steps");
}

RunConfig build_config(const CommonOpts& o) {
  RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  if (o.out_dir.size()) cfg.output.out_dir = o.out_dir;
  if (o.r0) cfg.r0 = *o.r0;
  if (o.a12) cfg.a12 = *o.a12;
  if (o.omega) cfg.omega = *o.omega;
  if (o.sigma) cfg.sigma = *o.sigma;
  if (o.d0) cfg.d0 = *o.d0;
  if (o.lambda) cfg.lambda = *o.lambda;
  if (o.m1) cfg.m1 = *o.m1;
  if (o.m2) cfg.m2 = *o.m2;
  if (o.n1) cfg.n1 = *o.n1;
  if (o.n2) cfg.n2 = *o.n2;
  if (o.a11) cfg.a11 = *o.a11;
  if (o.a22) cfg.a22 = *o.a22;
  if (o.omega_perp) cfg.omega_perp = *o.omega_perp;
  if (o.n) cfg.numerics.n = *o.n;
  if (o.dx) cfg.numerics.dx = *o.dx;
  if (o.dt) cfg.numerics.dt = *o.dt;
  if (o.n_steps) cfg.numerics.n_steps = *o.n_steps;
  if (o.sample_every) cfg.numerics.sample_every = *o.sample_every;
  return cfg;
}

void apply_threads(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv("RINGSPLIT_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0) omp_set_num_threads(threads);
}

int cmd_simulate(const CommonOpts& opts, const std::vector<double>& snapshot_times) {
  RunConfig cfg = build_config(opts);
  if (!snapshot_times.empty()) cfg.output.snapshot_times = snapshot_times;
  apply_threads(opts.threads);
  fs::create_directories(cfg.output.out_dir);

  // snapshots are exported at the sample instant nearest each requested time
  std::vector<std::size_t> snap_steps;
  for (double t : cfg.output.snapshot_times) {
    const double per = static_cast<double>(cfg.numerics.sample_every) * cfg.numerics.dt;
    std::size_t step = static_cast<std::size_t>(std::llround(t / per)) *
                       cfg.numerics.sample_every;
    snap_steps.push_back(std::min(step, cfg.numerics.n_steps));
  }

  SimulationHooks hooks;
  hooks.on_sample = [&](std::size_t step, double t, const ComplexField2D& p1,
                        const ComplexField2D& p2) {
    for (std::size_t i = 0; i < snap_steps.size(); ++i) {
      if (snap_steps[i] != step) continue;
      char name[64];
      for (int s = 0; s < 2; ++s) {
        std::snprintf(name, sizeof name, "density_s%d_%03zu.bin", s + 1, i);
        const fs::path p = fs::path(cfg.output.out_dir) / name;
        write_density_snapshot(*p1.grid, density(s == 0 ? p1 : p2), t, p.string());
        write_sidecar(cfg, p.string());
      }
    }
  };

  std::cerr << "simulate: n=" << cfg.numerics.n << " dx=" << cfg.numerics.dx
            << " dt=" << cfg.numerics.dt << " steps=" << cfg.numerics.n_steps
            << " r0=" << cfg.r0 << " a12=" << cfg.a12 << " a11\n";
  const SimulationResult res = run_simulation(cfg, &hooks);

  const fs::path ts_path = fs::path(cfg.output.out_dir) / "timeseries.csv";
  write_timeseries(res.series, ts_path.string());
  write_sidecar(cfg, ts_path.string());
  write_text_file((fs::path(cfg.output.out_dir) / "resolved.cfg").string(),
                  render_config(cfg.resolved()));
  std::cout << "wrote " << ts_path.string() << " (" << res.series.rows() << " rows)\n";
  return 0;
}

int cmd_sweep(const CommonOpts& opts, std::vector<double> r0_values,
              std::vector<double> a12_values, const std::string& target) {
  RunConfig cfg = build_config(opts);
  if (!r0_values.empty()) cfg.sweep.r0_values = std::move(r0_values);
  if (!a12_values.empty()) cfg.sweep.a12_values = std::move(a12_values);
  if (!target.empty()) cfg.sweep.target = parse_target(target);
  apply_threads(opts.threads);
  fs::create_directories(cfg.output.out_dir);

  std::cerr << "sweep: " << cfg.sweep.r0_values.size() << " x "
            << cfg.sweep.a12_values.size() << " cells, target "
            << to_string(cfg.sweep.target) << ", grid " << cfg.sweep.n << "^2\n";
  const SweepResult result = sweep(cfg);

  const fs::path sweep_path = fs::path(cfg.output.out_dir) / "sweep.csv";
  write_sweep_csv(result, sweep_path.string());
  write_sidecar(cfg, sweep_path.string());
  const auto contours = extract_contours(result, {0.90, 0.95, 0.98});
  const fs::path cont_path = fs::path(cfg.output.out_dir) / "contours.csv";
  write_contours_csv(contours, cont_path.string());
  write_sidecar(cfg, cont_path.string());

  int failed = 0;
  for (const auto& cell : result.cells) failed += cell.ok ? 0 : 1;
  std::cout << "wrote " << sweep_path.string() << " (" << result.cells.size()
            << " cells, " << failed << " failed)\n";
  return 0;
}

int cmd_analyze(const std::string& series_path, double r0, double mass_ratio,
                double prominence, double window) {
  const TimeSeries ts = read_timeseries(series_path);
  const double tr1 = analytic_revival_time(r0, 0, 1, mass_ratio);
  const double tr2 = analytic_revival_time(r0, 1, 1, mass_ratio);

  PeakSet p1 = detect_peaks(ts.t, ts.ac1, prominence);
  PeakSet p2 = detect_peaks(ts.t, ts.ac2, prominence);
  label_fractional_revivals(p1, tr1);
  label_fractional_revivals(p2, tr2);

  std::printf("analytic: T_R1 = %.3f, T_R2 = %.3f, dT_R = %.3f (1/omega_perp)\n", tr1,
              tr2, tr2 - tr1);
  for (int s = 0; s < 2; ++s) {
    const PeakSet& ps = s == 0 ? p1 : p2;
    std::printf("species %d autocorrelation peaks (%zu):\n", s + 1, ps.peaks.size());
    for (const auto& pk : ps.peaks)
      std::printf("  t = %10.3f  height = %.4f  width = %8.3f  %s\n", pk.t, pk.height,
                  pk.width, pk.label.c_str());
  }
  try {
    const double t1 = measure_revival_time(ts.t, ts.ac1, tr1, window);
    const double t2 = measure_revival_time(ts.t, ts.ac2, tr2, window);
    std::printf("measured: T_R1 = %.3f, T_R2 = %.3f, dT_R = %.3f\n", t1, t2, t2 - t1);
  } catch (const RevivalNotFound& e) {
    std::printf("measured: %s\n", e.what());
  }
  const SeparabilityPeaks sp = separability_scan(ts, tr2);
  std::printf("separability peaks:\n");
  for (const auto& pk : sp.peaks) {
    if (pk.found)
      std::printf("  %-4s t = %10.3f  S = %.4f  width@90%% = %.3f\n",
                  to_string(pk.label).c_str(), pk.t, pk.value, pk.width90);
    else
      std::printf("  %-4s not found\n", to_string(pk.label).c_str());
  }
  return 0;
}

int cmd_oracle(double r0, double w, double t, double d_sep, double mass_ratio) {
  std::printf("T_R1 = %.3f\n", analytic_revival_time(r0, 0, 1, mass_ratio));
  std::printf("T_R2 = %.3f\n", analytic_revival_time(r0, 1, 1, mass_ratio));
  std::printf("dT_R = %.3f\n", analytic_revival_difference(r0, mass_ratio));
  if (t > 0.0) {
    std::printf("w_t1(%g) = %.6f\n", t, free_width(w, t, 0, mass_ratio));
    std::printf("w_t2(%g) = %.6f\n", t, free_width(w, t, 1, mass_ratio));
    const double d = d_sep > 0.0 ? d_sep : 2.0 * 3.14159265358979323846 * r0;
    std::printf("dd1(%g) = %.6f\n", t, fringe_separation(t, d, 0, mass_ratio));
    std::printf("dd2(%g) = %.6f\n", t, fringe_separation(t, d, 1, mass_ratio));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ringsplit: two-species condensate dynamics in a ring trap"};
  app.require_subcommand(1);

  CommonOpts sim_opts;
  std::vector<double> snapshot_times;
  CLI::App* sim = app.add_subcommand(
      "simulate", "one evolution: time-series CSV plus requested density snapshots");
  add_common(sim, sim_opts);
  sim->add_option("--snapshot-times", snapshot_times,
                  "times (1/omega_perp) to export density snapshots at")
      ->delimiter(',');

  CommonOpts sweep_opts;
  std::vector<double> sweep_r0, sweep_a12;
  std::string sweep_target;
  CLI::App* sw = app.add_subcommand(
      "sweep", "grid sweep over (r0, a12): yield table CSV plus iso-yield contours");
  add_common(sw, sweep_opts);
  sw->add_option("--r0-values", sweep_r0, "ring radii (a_perp)")->delimiter(',');
  sw->add_option("--a12-values", sweep_a12, "interaction strengths (units of a11)")
      ->delimiter(',');
  sw->add_option("--target", sweep_target, "separability peak: S1/2, S1, S3/2, S2");

  std::string analyze_path;
  double analyze_r0 = 12.0, analyze_ratio = 87.0 / 85.0;
  double analyze_prominence = 0.05, analyze_window = 0.15;
  CLI::App* an = app.add_subcommand(
      "analyze", "recompute peaks and revival times from a time-series CSV");
  an->add_option("series", analyze_path, "timeseries.csv path")->required();
  an->add_option("--r0", analyze_r0, "ring radius the series was produced with");
  an->add_option("--mass-ratio", analyze_ratio, "m2/m1");
  an->add_option("--prominence", analyze_prominence, "peak prominence threshold (0,1)");
  an->add_option("--window", analyze_window, "revival search window fraction");

  double oracle_r0 = 12.0, oracle_w = 0.75, oracle_t = 0.0, oracle_d = 0.0;
  double oracle_ratio = 87.0 / 85.0;
  CLI::App* orc = app.add_subcommand(
      "oracle", "closed-form revival times, widths and fringe separations");
  orc->add_option("--r0", oracle_r0, "ring radius (a_perp)");
  orc->add_option("--w", oracle_w, "initial waist for the width formula (a_perp)");
  orc->add_option("--t", oracle_t, "time (1/omega_perp); enables width/fringe output");
  orc->add_option("--D", oracle_d, "initial separation (default 2*pi*r0)");
  orc->add_option("--mass-ratio", oracle_ratio, "m2/m1");

  CLI::App* chk = app.add_subcommand("check", "run the invariant self-test suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(sim_opts, snapshot_times);
    if (sw->parsed())
      return cmd_sweep(sweep_opts, sweep_r0, sweep_a12, sweep_target);
    if (an->parsed())
      return cmd_analyze(analyze_path, analyze_r0, analyze_ratio, analyze_prominence,
                         analyze_window);
    if (orc->parsed())
      return cmd_oracle(oracle_r0, oracle_w, oracle_t, oracle_d, oracle_ratio);
    if (chk->parsed()) return run_self_checks(std::cout) == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
