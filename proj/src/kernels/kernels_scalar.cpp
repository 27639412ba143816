#include "kernel_impls.hpp"

namespace qnd::kernels::scalar {

// Complex products are spelled out in real arithmetic; std::complex operator*
// goes through the Annex G NaN recovery path, which we never need here.

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const double ar = alpha.real();
    const double ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real();
        const double xi = x[i].imag();
        y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
    }
}

cplx cdotc(const cplx* x, const cplx* y, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

void cmul(const cplx* f, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double fr = f[i].real();
        const double fi = f[i].imag();
        const double yr = y[i].real();
        const double yi = y[i].imag();
        y[i] = {fr * yr - fi * yi, fr * yi + fi * yr};
    }
}

double weighted_norm_sq(const double* w, const cplx* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += w[i] * (x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    }
    return acc;
}

double norm_sq(const cplx* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return acc;
}

void scale(double s, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = {s * y[i].real(), s * y[i].imag()};
}

}  // namespace qnd::kernels::scalar
