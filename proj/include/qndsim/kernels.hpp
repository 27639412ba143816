#pragma once

// Data-parallel inner loops of the simulator.
//
// Every kernel has a scalar reference implementation. SIMD variants are
// compiled alongside and picked at runtime from the CPU feature set; they must
// agree with the reference to rounding (see tests/test_kernels.cpp).
// Set QNDSIM_KERNELS=scalar|avx2 to override the automatic choice.

#include <cassert>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qnd::kernels {

using cplx = std::complex<double>;

struct KernelTable {
    std::string_view name;
    // y += alpha * x
    void (*caxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    // sum_i conj(x_i) * y_i
    cplx (*cdotc)(const cplx* x, const cplx* y, std::size_t n);
    // y_i *= f_i
    void (*cmul)(const cplx* f, cplx* y, std::size_t n);
    // sum_i w_i * |x_i|^2
    double (*weighted_norm_sq)(const double* w, const cplx* x, std::size_t n);
    double (*norm_sq)(const cplx* x, std::size_t n);
    // y_i *= s
    void (*scale)(double s, cplx* y, std::size_t n);
};

enum class Backend { scalar, avx2 };

const KernelTable& scalar_table() noexcept;

/// nullptr when the AVX2 variant is not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table() noexcept;

const KernelTable& table(Backend backend);
bool available(Backend backend) noexcept;

/// The table used by the simulator. Selection is atomic; callers running
/// trajectories should not switch backends mid-run.
const KernelTable& active() noexcept;
Backend active_backend() noexcept;
void select_backend(Backend backend);

std::string_view backend_name(Backend backend) noexcept;

// Span front ends over the active table.

inline void caxpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    assert(x.size() == y.size());
    active().caxpy(alpha, x.data(), y.data(), x.size());
}

inline cplx cdotc(std::span<const cplx> x, std::span<const cplx> y) {
    assert(x.size() == y.size());
    return active().cdotc(x.data(), y.data(), x.size());
}

inline void cmul(std::span<const cplx> f, std::span<cplx> y) {
    assert(f.size() == y.size());
    active().cmul(f.data(), y.data(), y.size());
}

inline double weighted_norm_sq(std::span<const double> w, std::span<const cplx> x) {
    assert(w.size() == x.size());
    return active().weighted_norm_sq(w.data(), x.data(), x.size());
}

inline double norm_sq(std::span<const cplx> x) {
    return active().norm_sq(x.data(), x.size());
}

inline void scale(double s, std::span<cplx> y) { active().scale(s, y.data(), y.size()); }

}  // namespace qnd::kernels
