#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ringsplit/grid.hpp"
#include "ringsplit/observables.hpp"

using namespace ringsplit;

namespace {

// Normalized Gaussian with amplitude width w: psi ~ exp(-r^2 / (2 w^2)).
ComplexField2D gaussian(std::shared_ptr<const Grid2D> grid, double cx, double cy,
                        double w, double phase = 0.0) {
  ComplexField2D f = ComplexField2D::zeros(std::move(grid));
  const Grid2D& g = *f.grid;
  for (std::size_t iy = 0; iy < g.ny; ++iy)
    for (std::size_t ix = 0; ix < g.nx; ++ix) {
      const double x = g.x(ix) - cx, y = g.y(iy) - cy;
      f.at(ix, iy) = std::polar(std::exp(-(x * x + y * y) / (2.0 * w * w)), phase);
    }
  const double s = 1.0 / std::sqrt(integrate_abs2(f));
  for (auto& v : f.values) v *= s;
  return f;
}

}  // namespace

TEST_CASE("autocorrelation identities") {
  auto grid = std::make_shared<const Grid2D>(make_grid(128, 0.125));
  const ComplexField2D a = gaussian(grid, 0.0, 0.0, 1.0);
  CHECK(std::abs(autocorrelation(a, a) - 1.0) < 1e-10);

  const ComplexField2D b = gaussian(grid, 0.0, 0.0, 1.0, 1.234);
  CHECK(std::abs(autocorrelation(a, b) - 1.0) < 1e-10);
}

TEST_CASE("autocorrelation of displaced Gaussians: exp(-s^2/2w^2)") {
  auto grid = std::make_shared<const Grid2D>(make_grid(256, 0.08));
  const ComplexField2D a = gaussian(grid, -1.0, 0.0, 1.0);
  const ComplexField2D b = gaussian(grid, 1.0, 0.0, 1.0);
  CHECK(autocorrelation(a, b) == doctest::Approx(std::exp(-2.0)).epsilon(1e-6));
}

TEST_CASE("autocorrelation rejects mismatched grids") {
  auto g1 = std::make_shared<const Grid2D>(make_grid(64, 0.2));
  auto g2 = std::make_shared<const Grid2D>(make_grid(64, 0.25));
  CHECK_THROWS_AS(autocorrelation(gaussian(g1, 0, 0, 1.0), gaussian(g2, 0, 0, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("separability closed forms") {
  auto grid = std::make_shared<const Grid2D>(make_grid(256, 0.08));

  const ComplexField2D a = gaussian(grid, 0.0, 0.0, 1.0);
  const ComplexField2D same_phase = gaussian(grid, 0.0, 0.0, 1.0, 0.77);
  CHECK(std::abs(separability(a, same_phase)) < 1e-10);  // identical densities

  // offset s = 1, w = 1: S = 1 - exp(-1)
  const ComplexField2D b = gaussian(grid, 1.0, 0.0, 1.0);
  CHECK(separability(a, b) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-6));
  CHECK(separability(a, b) == doctest::Approx(separability(b, a)).epsilon(1e-14));

  // disjoint supports -> S = 1
  ComplexField2D left = ComplexField2D::zeros(grid);
  ComplexField2D right = ComplexField2D::zeros(grid);
  for (std::size_t iy = 0; iy < grid->ny; ++iy)
    for (std::size_t ix = 0; ix < grid->nx; ++ix) {
      if (grid->x(ix) < -1.0) left.at(ix, iy) = 1.0;
      if (grid->x(ix) > 1.0) right.at(ix, iy) = 1.0;
    }
  CHECK(std::abs(separability(left, right) - 1.0) < 1e-10);

  // bounds on a range of offsets
  for (double s : {0.0, 0.3, 0.9, 2.5, 6.0}) {
    const double val = separability(a, gaussian(grid, s, 0.0, 1.0));
    CHECK(val >= -1e-12);
    CHECK(val <= 1.0 + 1e-12);
  }

  const ComplexField2D zero = ComplexField2D::zeros(grid);
  CHECK_THROWS_AS(separability(a, zero), std::invalid_argument);
}

TEST_CASE("density integrates to one and ignores global phase") {
  auto grid = std::make_shared<const Grid2D>(make_grid(128, 0.125));
  const ComplexField2D a = gaussian(grid, 0.0, 0.0, 1.0);
  const ComplexField2D b = gaussian(grid, 0.0, 0.0, 1.0, 2.5);
  CHECK(std::abs(integrate(*grid, density(a)) - 1.0) < 1e-8);
  const auto ra = density(a);
  const auto rb = density(b);
  double diff = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i)
    diff = std::max(diff, std::abs(ra[i] - rb[i]));
  CHECK(diff < 1e-14);
}

TEST_CASE("detect_peaks basics") {
  std::vector<double> t, y;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(0.1 * i);
    y.push_back(0.01 * i);  // monotone
  }
  CHECK(detect_peaks(t, y, 0.05).peaks.empty());

  // exact parabola: vertex recovered to 1e-12
  std::vector<double> tp, yp;
  for (int i = 0; i <= 20; ++i) {
    const double x = 0.25 * i;
    tp.push_back(x);
    yp.push_back(1.0 - (x - 2.345) * (x - 2.345));
  }
  const PeakSet ps = detect_peaks(tp, yp, 0.05);
  REQUIRE(ps.peaks.size() == 1);
  CHECK(ps.peaks[0].t == doctest::Approx(2.345).epsilon(1e-12));
  CHECK(ps.peaks[0].height == doctest::Approx(1.0).epsilon(1e-12));

  // two equal peaks, both reported in time order
  std::vector<double> t2, y2;
  for (int i = 0; i <= 200; ++i) {
    const double x = 0.05 * i;
    t2.push_back(x);
    y2.push_back(std::exp(-(x - 3.0) * (x - 3.0)) + std::exp(-(x - 7.0) * (x - 7.0)));
  }
  const PeakSet twin = detect_peaks(t2, y2, 0.05);
  REQUIRE(twin.peaks.size() == 2);
  CHECK(twin.peaks[0].t < twin.peaks[1].t);
  CHECK(twin.peaks[0].t == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(twin.peaks[1].t == doctest::Approx(7.0).epsilon(1e-6));
  CHECK(twin.peaks[0].width > 0.0);

  // adding a constant offset leaves peak times unchanged
  std::vector<double> y3 = y2;
  for (auto& v : y3) v += 5.0;
  const PeakSet shifted = detect_peaks(t2, y3, 0.05);
  REQUIRE(shifted.peaks.size() == 2);
  CHECK(shifted.peaks[0].t == doctest::Approx(twin.peaks[0].t).epsilon(1e-12));
  CHECK(shifted.peaks[1].t == doctest::Approx(twin.peaks[1].t).epsilon(1e-12));

  // prominence threshold suppresses ripples
  std::vector<double> t4, y4;
  for (int i = 0; i <= 400; ++i) {
    const double x = 0.025 * i;
    t4.push_back(x);
    y4.push_back(std::exp(-(x - 5.0) * (x - 5.0)) + 0.01 * std::sin(40.0 * x));
  }
  CHECK(detect_peaks(t4, y4, 0.05).peaks.size() == 1);

  CHECK_THROWS_AS(detect_peaks(std::vector<double>{0.0, 1.0},
                               std::vector<double>{0.0, 1.0}, 0.05),
                  std::invalid_argument);
  CHECK_THROWS_AS(detect_peaks(t2, y2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(detect_peaks(t2, y2, 1.5), std::invalid_argument);
}

TEST_CASE("measure_revival_time") {
  std::vector<double> t, y;
  for (int i = 0; i <= 1000; ++i) {
    const double x = 0.5 * i;
    t.push_back(x);
    // decaying background with bumps at 100, 200, 300; the 200 bump is tallest
    y.push_back(0.2 * std::exp(-x / 500.0) +
                0.5 * std::exp(-(x - 100.0) * (x - 100.0) / 4.0) +
                0.9 * std::exp(-(x - 200.0) * (x - 200.0) / 4.0) +
                0.4 * std::exp(-(x - 300.0) * (x - 300.0) / 4.0));
  }
  CHECK(measure_revival_time(t, y, 195.0, 0.1) == doctest::Approx(200.0).epsilon(1e-4));
  // window wide enough to include two bumps: the highest wins
  CHECK(measure_revival_time(t, y, 150.0, 0.5) == doctest::Approx(200.0).epsilon(1e-4));
  // no local maximum inside a tight window on the flat tail
  CHECK_THROWS_AS(measure_revival_time(t, y, 420.0, 0.02), RevivalNotFound);
  CHECK_THROWS_AS(measure_revival_time(t, y, 600.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(measure_revival_time(t, y, 200.0, 0.0), std::invalid_argument);
}
