// Radix-2 complex FFT plans. Grids are restricted to powers of two, so a
// precomputed-twiddle iterative radix-2 covers every supported size.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ringsplit {

using cplx = std::complex<double>;

// In-place 1D transform, unnormalized (forward kernel exp(-2*pi*i*jk/n)),
// Stockham autosort internally (uses a thread-local scratch buffer).
// Plans are immutable after construction and safe to share across threads.
class Fft1dPlan {
 public:
  explicit Fft1dPlan(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(cplx* x) const { run(x, tw_fwd_.data()); }
  void inverse(cplx* x) const { run(x, tw_inv_.data()); }  // unnormalized

 private:
  void run(cplx* x, const cplx* tw) const;

  std::size_t n_ = 0;
  std::vector<cplx> tw_fwd_;  // per-stage tables, concatenated
  std::vector<cplx> tw_inv_;
};

// 2D transform over row-major data[iy*nx + ix]: batched row FFTs with a
// blocked transpose in between. Holds scratch, so one instance per owner;
// the `parallel` flag selects the OpenMP or the serial reference kernels.
class Fft2d {
 public:
  Fft2d(std::size_t nx, std::size_t ny, bool parallel = true);

  void forward(cplx* data);
  void inverse(cplx* data);  // applies the 1/(nx*ny) normalization

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }

 private:
  std::size_t nx_, ny_;
  bool parallel_;
  Fft1dPlan plan_x_;
  Fft1dPlan plan_y_;
  std::vector<cplx> scratch_;
};

}  // namespace ringsplit
