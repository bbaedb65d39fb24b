// Times the serial reference kernels against the OpenMP versions.
#include <chrono>
#include <cstdio>
#include <functional>
#include <omp.h>
#include <random>
#include <vector>

#include "ringsplit/fft.hpp"
#include "ringsplit/grid.hpp"
#include "ringsplit/kernels.hpp"
#include "ringsplit/model.hpp"
#include "ringsplit/solver.hpp"

using namespace ringsplit;
namespace kn = ringsplit::kernels;

namespace {

double time_ms(int reps, const std::function<void()>& fn) {
  fn();  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 512;
  int reps = 20;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string key = argv[i];
    if (key == "--size") n = static_cast<std::size_t>(std::atoll(argv[i + 1]));
    if (key == "--reps") reps = std::atoi(argv[i + 1]);
  }
  const std::size_t total = n * n;
  std::printf("grid %zux%zu, %d reps, %d thread(s)\n", n, n, reps,
              omp_get_max_threads());
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<cplx> a(total), b(total), scratch(total);
  std::vector<double> v1(total), v2(total), w(total);
  for (std::size_t i = 0; i < total; ++i) {
    a[i] = {uni(rng), uni(rng)};
    b[i] = {uni(rng), uni(rng)};
    v1[i] = uni(rng);
    v2[i] = uni(rng);
    w[i] = uni(rng) + 2.0;
  }
  kn::CouplingMatrix g{19.77, 5.93, 5.93, 19.77};

  Fft2d fft_serial(n, n, false);
  Fft2d fft_parallel(n, n, true);
  std::vector<cplx> buf = a;
  report("fft2d forward+inverse",
         time_ms(reps, [&] { fft_serial.forward(buf.data()); fft_serial.inverse(buf.data()); }),
         time_ms(reps, [&] { fft_parallel.forward(buf.data()); fft_parallel.inverse(buf.data()); }));

  std::vector<cplx> p1 = a, p2 = b;
  report("nonlinear phase rotation",
         time_ms(reps, [&] { kn::serial::nonlinear_phase(p1.data(), p2.data(), v1.data(), v2.data(), g, 0.0915, total); }),
         time_ms(reps, [&] { kn::par::nonlinear_phase(p1.data(), p2.data(), v1.data(), v2.data(), g, 0.0915, total); }));

  report("pointwise multiply",
         time_ms(reps, [&] { kn::serial::pointwise_multiply(p1.data(), b.data(), total); }),
         time_ms(reps, [&] { kn::par::pointwise_multiply(p1.data(), b.data(), total); }));

  report("transpose",
         time_ms(reps, [&] { kn::serial::transpose(a.data(), scratch.data(), n, n); }),
         time_ms(reps, [&] { kn::par::transpose(a.data(), scratch.data(), n, n); }));

  volatile double sink = 0.0;
  report("pair moments",
         time_ms(reps, [&] { sink = sink + kn::serial::pair_moments(a.data(), b.data(), total).s12; }),
         time_ms(reps, [&] { sink = sink + kn::par::pair_moments(a.data(), b.data(), total).s12; }));

  report("weighted |psi|^2 sum",
         time_ms(reps, [&] { sink = sink + kn::serial::weighted_sum_abs2(w.data(), a.data(), total); }),
         time_ms(reps, [&] { sink = sink + kn::par::weighted_sum_abs2(w.data(), a.data(), total); }));

  report("inner product",
         time_ms(reps, [&] { sink = sink + kn::serial::inner_product(a.data(), b.data(), total).real(); }),
         time_ms(reps, [&] { sink = sink + kn::par::inner_product(a.data(), b.data(), total).real(); }));

  // one full propagator step, serial vs parallel kernels end to end
  {
    const PhysicalParams phys;
    TrapParams trap;
    const ModelSpec spec = resolve_model(phys, trap);
    const double dx = std::max(4.0 * spec.r0, 48.0) / static_cast<double>(n);
    auto grid = std::make_shared<const Grid2D>(make_grid(n, dx));
    auto [s1, s2] = initial_state(grid, spec);
    Propagator serial_prop(s1, s2, spec, false);
    Propagator parallel_prop(std::move(s1), std::move(s2), spec, true);
    report("full propagator step",
           time_ms(reps, [&] { serial_prop.step(0.0915); }),
           time_ms(reps, [&] { parallel_prop.step(0.0915); }));
  }
  (void)sink;
  return 0;
}
