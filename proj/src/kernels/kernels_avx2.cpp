// AVX2 + FMA variants. Functions carry a target attribute so the rest of the
// library stays baseline x86-64; dispatch.cpp only hands these out after
// checking the CPU at runtime.
//
// Complex arrays are read as interleaved (re, im) doubles, two complex
// values per 256-bit register. Tails fall back to the scalar reference.

#include "kernel_impls.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))

#include <immintrin.h>

#define QND_TARGET_AVX2 __attribute__((target("avx2,fma")))

namespace qnd::kernels::avx2 {
namespace {

QND_TARGET_AVX2 inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

QND_TARGET_AVX2 inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

QND_TARGET_AVX2 void caxpy_impl(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const auto* xd = reinterpret_cast<const double*>(x);
    auto* yd = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d t = _mm256_mul_pd(ai, swap_re_im(xv));
        // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
        const __m256d prod = _mm256_fmaddsub_pd(ar, xv, t);
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod));
    }
    scalar::caxpy(alpha, x + i, y + i, n - i);
}

QND_TARGET_AVX2 cplx cdotc_impl(const cplx* x, const cplx* y, std::size_t n) {
    const auto* xd = reinterpret_cast<const double*>(x);
    const auto* yd = reinterpret_cast<const double*>(y);
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        re = _mm256_fmadd_pd(xv, yv, re);                // [xr*yr, xi*yi, ...]
        im = _mm256_fmadd_pd(xv, swap_re_im(yv), im);    // [xr*yi, xi*yr, ...]
    }
    alignas(32) double imv[4];
    _mm256_store_pd(imv, im);
    const cplx tail = scalar::cdotc(x + i, y + i, n - i);
    return {hsum(re) + tail.real(), (imv[0] - imv[1]) + (imv[2] - imv[3]) + tail.imag()};
}

QND_TARGET_AVX2 void cmul_impl(const cplx* f, cplx* y, std::size_t n) {
    const auto* fd = reinterpret_cast<const double*>(f);
    auto* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d fv = _mm256_loadu_pd(fd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        const __m256d fre = _mm256_movedup_pd(fv);
        const __m256d fim = _mm256_permute_pd(fv, 0b1111);
        const __m256d t = _mm256_mul_pd(swap_re_im(yv), fim);
        _mm256_storeu_pd(yd + 2 * i, _mm256_fmaddsub_pd(yv, fre, t));
    }
    scalar::cmul(f + i, y + i, n - i);
}

QND_TARGET_AVX2 double weighted_norm_sq_impl(const double* w, const cplx* x, std::size_t n) {
    const auto* xd = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d wpair = _mm256_castpd128_pd256(_mm_loadu_pd(w + i));
        const __m256d wv = _mm256_permute4x64_pd(wpair, 0b01010000);  // [w0 w0 w1 w1]
        acc = _mm256_fmadd_pd(wv, _mm256_mul_pd(xv, xv), acc);
    }
    return hsum(acc) + scalar::weighted_norm_sq(w + i, x + i, n - i);
}

QND_TARGET_AVX2 double norm_sq_impl(const cplx* x, std::size_t n) {
    const auto* xd = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    return hsum(acc) + scalar::norm_sq(x + i, n - i);
}

QND_TARGET_AVX2 void scale_impl(double s, cplx* y, std::size_t n) {
    auto* yd = reinterpret_cast<double*>(y);
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(yd + 2 * i, _mm256_mul_pd(sv, _mm256_loadu_pd(yd + 2 * i)));
    }
    scalar::scale(s, y + i, n - i);
}

}  // namespace

bool compiled() noexcept { return true; }

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) { caxpy_impl(alpha, x, y, n); }
cplx cdotc(const cplx* x, const cplx* y, std::size_t n) { return cdotc_impl(x, y, n); }
void cmul(const cplx* f, cplx* y, std::size_t n) { cmul_impl(f, y, n); }
double weighted_norm_sq(const double* w, const cplx* x, std::size_t n) {
    return weighted_norm_sq_impl(w, x, n);
}
double norm_sq(const cplx* x, std::size_t n) { return norm_sq_impl(x, n); }
void scale(double s, cplx* y, std::size_t n) { scale_impl(s, y, n); }

}  // namespace qnd::kernels::avx2

#else

namespace qnd::kernels::avx2 {

bool compiled() noexcept { return false; }

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) { scalar::caxpy(alpha, x, y, n); }
cplx cdotc(const cplx* x, const cplx* y, std::size_t n) { return scalar::cdotc(x, y, n); }
void cmul(const cplx* f, cplx* y, std::size_t n) { scalar::cmul(f, y, n); }
double weighted_norm_sq(const double* w, const cplx* x, std::size_t n) {
    return scalar::weighted_norm_sq(w, x, n);
}
double norm_sq(const cplx* x, std::size_t n) { return scalar::norm_sq(x, n); }
void scale(double s, cplx* y, std::size_t n) { scalar::scale(s, y, n); }

}  // namespace qnd::kernels::avx2

#endif
