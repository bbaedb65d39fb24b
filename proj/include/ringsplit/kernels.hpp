// Inner-loop kernels in two variants: a plain serial reference and the
// OpenMP-parallel versions used by the solver. The pairs must agree (tests
// check bitwise equality for pointwise kernels, 1e-13 for reductions).
#pragma once

#include <complex>
#include <cstddef>

namespace ringsplit::kernels {

using cplx = std::complex<double>;

struct CouplingMatrix {
  double g11 = 0.0, g12 = 0.0, g21 = 0.0, g22 = 0.0;
};

// One-pass sampled moments of the pair state:
//   norm1 = sum |psi1|^2, norm2 = sum |psi2|^2,
//   s11 = sum |psi1|^4, s22 = sum |psi2|^4, s12 = sum |psi1|^2 |psi2|^2.
struct PairMoments {
  double norm1 = 0.0, norm2 = 0.0;
  double s11 = 0.0, s22 = 0.0, s12 = 0.0;
};

namespace serial {

void pointwise_multiply(cplx* a, const cplx* b, std::size_t n);
void scale(cplx* a, double s, std::size_t n);

// Frozen-density nonlinear/potential substep for both species:
//   theta_i = -dt*(g_i1 rho1 + g_i2 rho2 + v_i),  psi_i *= exp(i theta_i),
// with rho_j = |psi_j|^2 read before either field is modified.
void nonlinear_phase(cplx* psi1, cplx* psi2, const double* v1, const double* v2,
                     const CouplingMatrix& g, double dt, std::size_t n);

// out[c*rows + r] = in[r*cols + c], scaled.
void transpose(const cplx* in, cplx* out, std::size_t rows, std::size_t cols,
               double scale = 1.0);

double sum(const double* a, std::size_t n);
double sum_abs2(const cplx* a, std::size_t n);
double max_abs2(const cplx* a, std::size_t n);  // NaN-propagating
cplx inner_product(const cplx* a, const cplx* b, std::size_t n);  // sum conj(a)*b
double weighted_sum_abs2(const double* w, const cplx* a, std::size_t n);
PairMoments pair_moments(const cplx* psi1, const cplx* psi2, std::size_t n);

// sum of V1 rho1 + V2 rho2 + g11 rho1^2/2 + g22 rho2^2/2 + (g12+g21)/2 rho1 rho2.
double potential_interaction_sum(const cplx* psi1, const cplx* psi2,
                                 const double* v1, const double* v2,
                                 const CouplingMatrix& g, std::size_t n);

}  // namespace serial

namespace par {

void pointwise_multiply(cplx* a, const cplx* b, std::size_t n);
void scale(cplx* a, double s, std::size_t n);
void nonlinear_phase(cplx* psi1, cplx* psi2, const double* v1, const double* v2,
                     const CouplingMatrix& g, double dt, std::size_t n);
void transpose(const cplx* in, cplx* out, std::size_t rows, std::size_t cols,
               double scale = 1.0);
double sum(const double* a, std::size_t n);
double sum_abs2(const cplx* a, std::size_t n);
double max_abs2(const cplx* a, std::size_t n);
cplx inner_product(const cplx* a, const cplx* b, std::size_t n);
double weighted_sum_abs2(const double* w, const cplx* a, std::size_t n);
PairMoments pair_moments(const cplx* psi1, const cplx* psi2, std::size_t n);
double potential_interaction_sum(const cplx* psi1, const cplx* psi2,
                                 const double* v1, const double* v2,
                                 const CouplingMatrix& g, std::size_t n);

}  // namespace par

}  // namespace ringsplit::kernels
