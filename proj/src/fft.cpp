#include "ringsplit/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ringsplit/kernels.hpp"

namespace ringsplit {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

thread_local std::vector<cplx> tl_scratch;

cplx* scratch_for(std::size_t n) {
  if (tl_scratch.size() < n) tl_scratch.resize(n);
  return tl_scratch.data();
}

}  // namespace

Fft1dPlan::Fft1dPlan(std::size_t n) : n_(n) {
  if (!power_of_two(n) || n < 2)
    throw std::invalid_argument("Fft1dPlan: length must be a power of two >= 2");
  // Stockham autosort stages: stage with current length L uses L/2 twiddles
  // exp(-2*pi*i*p/L); tables are concatenated per stage, n-1 entries total.
  tw_fwd_.reserve(n - 1);
  for (std::size_t len = n; len >= 2; len >>= 1) {
    for (std::size_t p = 0; p < len / 2; ++p) {
      const double ang =
          -2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(len);
      tw_fwd_.push_back({std::cos(ang), std::sin(ang)});
    }
  }
  tw_inv_.resize(tw_fwd_.size());
  std::transform(tw_fwd_.begin(), tw_fwd_.end(), tw_inv_.begin(),
                 [](cplx w) { return std::conj(w); });
}

// Out-of-place decimation-in-frequency Stockham; output lands in x in natural
// order with no bit-reversal pass.
void Fft1dPlan::run(cplx* x, const cplx* tw) const {
  cplx* work = scratch_for(n_);
  cplx* src = x;
  cplx* dst = work;
  std::size_t half = n_ >> 1;
  std::size_t stride = 1;
  while (half >= 1) {
    for (std::size_t p = 0; p < half; ++p) {
      const cplx w = tw[p];
      const cplx* s0 = src + stride * p;
      const cplx* s1 = src + stride * (p + half);
      cplx* d0 = dst + stride * 2 * p;
      cplx* d1 = d0 + stride;
      for (std::size_t q = 0; q < stride; ++q) {
        const cplx a = s0[q];
        const cplx b = s1[q];
        d0[q] = a + b;
        d1[q] = (a - b) * w;
      }
    }
    tw += half;
    std::swap(src, dst);
    half >>= 1;
    stride <<= 1;
  }
  if (src != x) std::copy(src, src + n_, x);
}

Fft2d::Fft2d(std::size_t nx, std::size_t ny, bool parallel)
    : nx_(nx), ny_(ny), parallel_(parallel), plan_x_(nx), plan_y_(ny),
      scratch_(nx * ny) {}

namespace {

template <typename RowFn>
void rows_serial(cplx* data, std::size_t rows, std::size_t len, RowFn fn) {
  for (std::size_t r = 0; r < rows; ++r) fn(data + r * len);
}

template <typename RowFn>
void rows_parallel(cplx* data, std::size_t rows, std::size_t len, RowFn fn) {
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < rows; ++r) fn(data + r * len);
}

}  // namespace

void Fft2d::forward(cplx* data) {
  const auto row_x = [this](cplx* row) { plan_x_.forward(row); };
  const auto row_y = [this](cplx* row) { plan_y_.forward(row); };
  if (parallel_) {
    rows_parallel(data, ny_, nx_, row_x);
    kernels::par::transpose(data, scratch_.data(), ny_, nx_);
    rows_parallel(scratch_.data(), nx_, ny_, row_y);
    kernels::par::transpose(scratch_.data(), data, nx_, ny_);
  } else {
    rows_serial(data, ny_, nx_, row_x);
    kernels::serial::transpose(data, scratch_.data(), ny_, nx_);
    rows_serial(scratch_.data(), nx_, ny_, row_y);
    kernels::serial::transpose(scratch_.data(), data, nx_, ny_);
  }
}

void Fft2d::inverse(cplx* data) {
  const double s = 1.0 / (static_cast<double>(nx_) * static_cast<double>(ny_));
  const auto row_x = [this](cplx* row) { plan_x_.inverse(row); };
  const auto row_y = [this](cplx* row) { plan_y_.inverse(row); };
  if (parallel_) {
    rows_parallel(data, ny_, nx_, row_x);
    kernels::par::transpose(data, scratch_.data(), ny_, nx_);
    rows_parallel(scratch_.data(), nx_, ny_, row_y);
    kernels::par::transpose(scratch_.data(), data, nx_, ny_, s);
  } else {
    rows_serial(data, ny_, nx_, row_x);
    kernels::serial::transpose(data, scratch_.data(), ny_, nx_);
    rows_serial(scratch_.data(), nx_, ny_, row_y);
    kernels::serial::transpose(scratch_.data(), data, nx_, ny_, s);
  }
}

}  // namespace ringsplit
