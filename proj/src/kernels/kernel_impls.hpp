#pragma once

#include "qndsim/kernels.hpp"

namespace qnd::kernels {

namespace scalar {
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
cplx cdotc(const cplx* x, const cplx* y, std::size_t n);
void cmul(const cplx* f, cplx* y, std::size_t n);
double weighted_norm_sq(const double* w, const cplx* x, std::size_t n);
double norm_sq(const cplx* x, std::size_t n);
void scale(double s, cplx* y, std::size_t n);
}  // namespace scalar

namespace avx2 {
// False when the translation unit was built for a non-x86 target.
bool compiled() noexcept;
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
cplx cdotc(const cplx* x, const cplx* y, std::size_t n);
void cmul(const cplx* f, cplx* y, std::size_t n);
double weighted_norm_sq(const double* w, const cplx* x, std::size_t n);
double norm_sq(const cplx* x, std::size_t n);
void scale(double s, cplx* y, std::size_t n);
}  // namespace avx2

}  // namespace qnd::kernels
