#include <atomic>
#include <cstdlib>
#include <string>

#include "kernel_impls.hpp"
#include "qndsim/errors.hpp"

namespace qnd::kernels {
namespace {

constexpr KernelTable kScalar{
    "scalar",
    &scalar::caxpy,
    &scalar::cdotc,
    &scalar::cmul,
    &scalar::weighted_norm_sq,
    &scalar::norm_sq,
    &scalar::scale,
};

constexpr KernelTable kAvx2{
    "avx2",
    &avx2::caxpy,
    &avx2::cdotc,
    &avx2::cmul,
    &avx2::weighted_norm_sq,
    &avx2::norm_sq,
    &avx2::scale,
};

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* initial_table() noexcept {
    const KernelTable* best = avx2_table() ? avx2_table() : &kScalar;
    if (const char* env = std::getenv("QNDSIM_KERNELS")) {
        const std::string want(env);
        if (want == "scalar") return &kScalar;
        if (want == "avx2" && avx2_table()) return avx2_table();
    }
    return best;
}

std::atomic<const KernelTable*>& current() noexcept {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
    static const bool ok = avx2::compiled() && cpu_has_avx2();
    return ok ? &kAvx2 : nullptr;
}

bool available(Backend backend) noexcept {
    return backend == Backend::scalar || avx2_table() != nullptr;
}

const KernelTable& table(Backend backend) {
    if (backend == Backend::scalar) return kScalar;
    if (const KernelTable* t = avx2_table()) return *t;
    throw UnsupportedConfiguration("avx2 kernels are not available on this CPU");
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

Backend active_backend() noexcept {
    return &active() == &kScalar ? Backend::scalar : Backend::avx2;
}

void select_backend(Backend backend) { current().store(&table(backend)); }

std::string_view backend_name(Backend backend) noexcept {
    return backend == Backend::scalar ? "scalar" : "avx2";
}

}  // namespace qnd::kernels
