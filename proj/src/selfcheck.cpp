#include "ringsplit/selfcheck.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <random>

#include "ringsplit/analysis.hpp"
#include "ringsplit/config.hpp"
#include "ringsplit/io.hpp"
#include "ringsplit/model.hpp"
#include "ringsplit/observables.hpp"

namespace ringsplit {

namespace {

struct Checker {
  std::ostream& out;
  int failures = 0;

  void check(const std::string& name, bool ok, double value, double bound) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-6s %-52s (%.3e vs bound %.3e)\n",
                  ok ? "ok" : "FAIL", name.c_str(), value, bound);
    out << buf;
    if (!ok) ++failures;
  }
};

}  // namespace

int run_self_checks(std::ostream& out) {
  Checker c{out};
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  // transform round-trip and Parseval on a random 64^2 field
  {
    auto grid = std::make_shared<const Grid2D>(make_grid(64, 0.3));
    ComplexField2D f = ComplexField2D::zeros(grid);
    for (auto& v : f.values) v = {uni(rng), uni(rng)};
    const ComplexField2D F = forward_transform(f);
    const ComplexField2D g = inverse_transform(F);
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      err = std::max(err, std::abs(g.values[i] - f.values[i]));
      ref = std::max(ref, std::abs(f.values[i]));
    }
    c.check("fft round-trip (relative max-norm)", err / ref < 1e-12, err / ref, 1e-12);
    double sum_x = 0.0, sum_k = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      sum_x += std::norm(f.values[i]);
      sum_k += std::norm(F.values[i]);
    }
    const double parseval = std::abs(sum_k / static_cast<double>(f.size()) - sum_x) / sum_x;
    c.check("parseval identity", parseval < 1e-10, parseval, 1e-10);
  }

  // quadrature of a normalized Gaussian
  {
    auto grid = std::make_shared<const Grid2D>(make_grid(128, 0.25));
    std::vector<double> rho(grid->size());
    const double w = 2.0;
    for (std::size_t iy = 0; iy < grid->ny; ++iy)
      for (std::size_t ix = 0; ix < grid->nx; ++ix) {
        const double x = grid->x(ix), y = grid->y(iy);
        rho[iy * grid->nx + ix] =
            std::exp(-2.0 * (x * x + y * y) / (w * w)) * 2.0 / (std::numbers::pi * w * w);
      }
    const double err = std::abs(integrate(*grid, rho) - 1.0);
    c.check("gaussian quadrature normalization", err < 1e-8, err, 1e-8);
  }

  // spike calibration: dV1/dr(r0) = 0 by central differences, V'' > 0
  {
    const PhysicalParams phys;
    TrapParams trap;
    const ModelSpec spec = resolve_model(phys, trap);
    auto v1 = [&](double r) {
      return 0.25 * spec.omega * spec.omega * r * r +
             spec.v0 * std::exp(-2.0 * r * r / (spec.sigma * spec.sigma));
    };
    const double h = 1e-6;
    const double d1 = (v1(spec.r0 + h) - v1(spec.r0 - h)) / (2.0 * h);
    const double d2 = (v1(spec.r0 + h) - 2.0 * v1(spec.r0) + v1(spec.r0 - h)) / (h * h);
    c.check("trap minimum at r0 (|dV/dr|)", std::abs(d1) < 1e-6, std::abs(d1), 1e-6);
    c.check("trap curvature at r0 (V'' > 0)", d2 > 0.0, d2, 0.0);
  }

  // initial state normalization and species identity
  {
    const PhysicalParams phys;
    TrapParams trap;
    const ModelSpec spec = resolve_model(phys, trap);
    auto grid = std::make_shared<const Grid2D>(make_grid(256, 0.1875));
    const auto [psi1, psi2] = initial_state(grid, spec);
    const double nerr = std::abs(integrate_abs2(psi1) - 1.0);
    c.check("initial state norm", nerr < 1e-10, nerr, 1e-10);
    const double s = separability(psi1, psi2);
    c.check("identical densities separate to S = 0", std::abs(s) < 1e-10, std::abs(s),
            1e-10);
    const double ac = autocorrelation(psi1, psi1);
    c.check("autocorrelation(psi,psi) = 1", std::abs(ac - 1.0) < 1e-10,
            std::abs(ac - 1.0), 1e-10);
  }

  // closed-form Gaussian observable identities
  {
    auto grid = std::make_shared<const Grid2D>(make_grid(256, 0.08));
    auto gaussian = [&](double cx, double w) {
      ComplexField2D f = ComplexField2D::zeros(grid);
      for (std::size_t iy = 0; iy < grid->ny; ++iy)
        for (std::size_t ix = 0; ix < grid->nx; ++ix) {
          const double x = grid->x(ix), y = grid->y(iy);
          f.at(ix, iy) = std::exp(-((x - cx) * (x - cx) + y * y) / (2.0 * w * w));
        }
      const double s = 1.0 / std::sqrt(integrate_abs2(f));
      for (auto& v : f.values) v *= s;
      return f;
    };
    const ComplexField2D a = gaussian(-1.0, 1.0);
    const ComplexField2D b = gaussian(1.0, 1.0);
    const double ac_err = std::abs(autocorrelation(a, b) - std::exp(-2.0));
    c.check("gaussian overlap |<a|b>|^2 = exp(-s^2/2w^2)", ac_err < 1e-6, ac_err, 1e-6);
    const ComplexField2D d = gaussian(0.0, 1.0);
    const ComplexField2D e = gaussian(1.0, 1.0);
    const double sep_err = std::abs(separability(d, e) - (1.0 - std::exp(-1.0)));
    c.check("gaussian separability 1 - exp(-s^2/w^2)", sep_err < 1e-6, sep_err, 1e-6);
  }

  // analytic oracle internal consistency: fringe separation inverts to T_R
  {
    const double r0 = 12.0;
    const double t1 = std::numbers::pi * r0 * r0;
    const double err = std::abs(fringe_separation(t1, 2.0 * std::numbers::pi * r0, 0) -
                                2.0 * std::numbers::pi * r0);
    c.check("fringe separation reproduces revival time", err < 1e-9, err, 1e-9);
  }

  // snapshot and config round-trips in a temporary directory
  {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ringsplit_selfcheck";
    fs::create_directories(dir);
    auto grid = std::make_shared<const Grid2D>(make_grid(8, 0.5));
    std::vector<double> rho(grid->size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = static_cast<double>(i) * 0.25;
    const std::string snap = (dir / "snap.bin").string();
    write_density_snapshot(*grid, rho, 1.5, snap);
    const DensitySnapshot back = read_density_snapshot(snap);
    const bool snap_ok = back.nx == grid->nx && back.ny == grid->ny &&
                         back.dx == grid->dx && back.t == 1.5 && back.density == rho;
    c.check("density snapshot round-trip", snap_ok, snap_ok ? 0.0 : 1.0, 0.0);
    const RunConfig cfg;
    const bool cfg_ok = parse_config(render_config(cfg)) == cfg.resolved();
    c.check("config echo round-trip", cfg_ok, cfg_ok ? 0.0 : 1.0, 0.0);
    fs::remove_all(dir);
  }

  out << (c.failures == 0 ? "all checks passed\n"
                          : std::to_string(c.failures) + " check(s) failed\n");
  return c.failures;
}

}  // namespace ringsplit
