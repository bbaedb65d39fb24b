#include "ringsplit/kernels.hpp"

#include <cmath>

namespace ringsplit::kernels {

namespace {
constexpr std::size_t kTransposeBlock = 64;
}

namespace serial {

void pointwise_multiply(cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
}

void scale(cplx* a, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

void nonlinear_phase(cplx* psi1, cplx* psi2, const double* v1, const double* v2,
                     const CouplingMatrix& g, double dt, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double rho1 = std::norm(psi1[i]);
    const double rho2 = std::norm(psi2[i]);
    const double th1 = -dt * (g.g11 * rho1 + g.g12 * rho2 + v1[i]);
    const double th2 = -dt * (g.g21 * rho1 + g.g22 * rho2 + v2[i]);
    psi1[i] *= cplx(std::cos(th1), std::sin(th1));
    psi2[i] *= cplx(std::cos(th2), std::sin(th2));
  }
}

void transpose(const cplx* in, cplx* out, std::size_t rows, std::size_t cols,
               double s) {
  for (std::size_t rb = 0; rb < rows; rb += kTransposeBlock)
    for (std::size_t cb = 0; cb < cols; cb += kTransposeBlock) {
      const std::size_t re = std::min(rb + kTransposeBlock, rows);
      const std::size_t ce = std::min(cb + kTransposeBlock, cols);
      for (std::size_t r = rb; r < re; ++r)
        for (std::size_t c = cb; c < ce; ++c) out[c * rows + r] = s * in[r * cols + c];
    }
}

double sum(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

double sum_abs2(const cplx* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(a[i]);
  return acc;
}

double max_abs2(const cplx* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::norm(a[i]);
    if (std::isnan(v)) return std::nan("");
    if (v > m) m = v;
  }
  return m;
}

cplx inner_product(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx p = std::conj(a[i]) * b[i];
    re += p.real();
    im += p.imag();
  }
  return {re, im};
}

double weighted_sum_abs2(const double* w, const cplx* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::norm(a[i]);
  return acc;
}

PairMoments pair_moments(const cplx* psi1, const cplx* psi2, std::size_t n) {
  PairMoments m;
  for (std::size_t i = 0; i < n; ++i) {
    const double r1 = std::norm(psi1[i]);
    const double r2 = std::norm(psi2[i]);
    m.norm1 += r1;
    m.norm2 += r2;
    m.s11 += r1 * r1;
    m.s22 += r2 * r2;
    m.s12 += r1 * r2;
  }
  return m;
}

double potential_interaction_sum(const cplx* psi1, const cplx* psi2,
                                 const double* v1, const double* v2,
                                 const CouplingMatrix& g, std::size_t n) {
  double acc = 0.0;
  const double gx = 0.5 * (g.g12 + g.g21);
  for (std::size_t i = 0; i < n; ++i) {
    const double r1 = std::norm(psi1[i]);
    const double r2 = std::norm(psi2[i]);
    acc += v1[i] * r1 + v2[i] * r2 + 0.5 * g.g11 * r1 * r1 + 0.5 * g.g22 * r2 * r2 +
           gx * r1 * r2;
  }
  return acc;
}

}  // namespace serial

namespace par {

void pointwise_multiply(cplx* a, const cplx* b, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
}

void scale(cplx* a, double s, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

void nonlinear_phase(cplx* psi1, cplx* psi2, const double* v1, const double* v2,
                     const CouplingMatrix& g, double dt, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    const double rho1 = std::norm(psi1[i]);
    const double rho2 = std::norm(psi2[i]);
    const double th1 = -dt * (g.g11 * rho1 + g.g12 * rho2 + v1[i]);
    const double th2 = -dt * (g.g21 * rho1 + g.g22 * rho2 + v2[i]);
    psi1[i] *= cplx(std::cos(th1), std::sin(th1));
    psi2[i] *= cplx(std::cos(th2), std::sin(th2));
  }
}

void transpose(const cplx* in, cplx* out, std::size_t rows, std::size_t cols,
               double s) {
#pragma omp parallel for schedule(static)
  for (std::size_t rb = 0; rb < rows; rb += kTransposeBlock) {
    const std::size_t re = std::min(rb + kTransposeBlock, rows);
    for (std::size_t cb = 0; cb < cols; cb += kTransposeBlock) {
      const std::size_t ce = std::min(cb + kTransposeBlock, cols);
      for (std::size_t r = rb; r < re; ++r)
        for (std::size_t c = cb; c < ce; ++c) out[c * rows + r] = s * in[r * cols + c];
    }
  }
}

double sum(const double* a, std::size_t n) {
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc)
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

double sum_abs2(const cplx* a, std::size_t n) {
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc)
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(a[i]);
  return acc;
}

double max_abs2(const cplx* a, std::size_t n) {
  double m = 0.0;
  bool bad = false;
#pragma omp parallel for schedule(static) reduction(max : m) reduction(|| : bad)
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::norm(a[i]);
    bad = bad || std::isnan(v);
    if (v > m) m = v;
  }
  return bad ? std::nan("") : m;
}

cplx inner_product(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im)
  for (std::size_t i = 0; i < n; ++i) {
    const cplx p = std::conj(a[i]) * b[i];
    re += p.real();
    im += p.imag();
  }
  return {re, im};
}

double weighted_sum_abs2(const double* w, const cplx* a, std::size_t n) {
  double acc = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : acc)
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::norm(a[i]);
  return acc;
}

PairMoments pair_moments(const cplx* psi1, const cplx* psi2, std::size_t n) {
  double n1 = 0.0, n2 = 0.0, s11 = 0.0, s22 = 0.0, s12 = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : n1, n2, s11, s22, s12)
  for (std::size_t i = 0; i < n; ++i) {
    const double r1 = std::norm(psi1[i]);
    const double r2 = std::norm(psi2[i]);
    n1 += r1;
    n2 += r2;
    s11 += r1 * r1;
    s22 += r2 * r2;
    s12 += r1 * r2;
  }
  return {n1, n2, s11, s22, s12};
}

double potential_interaction_sum(const cplx* psi1, const cplx* psi2,
                                 const double* v1, const double* v2,
                                 const CouplingMatrix& g, std::size_t n) {
  double acc = 0.0;
  const double gx = 0.5 * (g.g12 + g.g21);
#pragma omp parallel for schedule(static) reduction(+ : acc)
  for (std::size_t i = 0; i < n; ++i) {
    const double r1 = std::norm(psi1[i]);
    const double r2 = std::norm(psi2[i]);
    acc += v1[i] * r1 + v2[i] * r2 + 0.5 * g.g11 * r1 * r1 + 0.5 * g.g22 * r2 * r2 +
           gx * r1 * r2;
  }
  return acc;
}

}  // namespace par

}  // namespace ringsplit::kernels
