#include <random>
#include <vector>

#include "doctest.h"
#include "qndsim/batch.hpp"
#include "qndsim/kernels.hpp"

using namespace qnd;
using kernels::cplx;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::mt19937_64& gen) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(n);
    for (auto& x : v) x = {g(gen), g(gen)};
    return v;
}

std::vector<double> random_weights(std::size_t n, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u;
    std::vector<double> v(n);
    for (auto& x : v) x = u(gen);
    return v;
}

// Reference results through std::complex arithmetic.
cplx ref_cdotc(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

void check_table(const kernels::KernelTable& t) {
    std::mt19937_64 gen(1234);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 21u, 32u, 41u}) {
        CAPTURE(n);
        const auto x = random_vec(n, gen);
        const auto y0 = random_vec(n, gen);
        const auto w = random_weights(n, gen);
        const cplx alpha{0.3, -1.7};

        auto y = y0;
        t.caxpy(alpha, x.data(), y.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] - (y0[i] + alpha * x[i])) < 1e-13);

        CHECK(std::abs(t.cdotc(x.data(), y0.data(), n) - ref_cdotc(x, y0)) < 1e-12);

        y = y0;
        t.cmul(x.data(), y.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] - x[i] * y0[i]) < 1e-13);

        double wn = 0.0;
        double nn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            wn += w[i] * std::norm(x[i]);
            nn += std::norm(x[i]);
        }
        CHECK(t.weighted_norm_sq(w.data(), x.data(), n) == doctest::Approx(wn).epsilon(1e-13));
        CHECK(t.norm_sq(x.data(), n) == doctest::Approx(nn).epsilon(1e-13));

        y = y0;
        t.scale(-2.5, y.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] - (-2.5) * y0[i]) < 1e-13);
    }
}

struct BackendGuard {
    kernels::Backend saved = kernels::active_backend();
    ~BackendGuard() { kernels::select_backend(saved); }
};

}  // namespace

TEST_CASE("scalar kernels match std::complex reference") { check_table(kernels::scalar_table()); }

TEST_CASE("avx2 kernels match std::complex reference") {
    if (!kernels::avx2_table()) {
        MESSAGE("avx2 not available, skipped");
        return;
    }
    check_table(*kernels::avx2_table());
}

TEST_CASE("avx2 and scalar kernels agree to rounding") {
    const kernels::KernelTable* simd = kernels::avx2_table();
    if (!simd) return;
    const kernels::KernelTable& ref = kernels::scalar_table();
    std::mt19937_64 gen(99);
    for (std::size_t n = 0; n < 50; ++n) {
        const auto x = random_vec(n, gen);
        const auto y0 = random_vec(n, gen);
        const auto w = random_weights(n, gen);
        auto ya = y0;
        auto yb = y0;
        ref.caxpy({1.1, 0.4}, x.data(), ya.data(), n);
        simd->caxpy({1.1, 0.4}, x.data(), yb.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ya[i] - yb[i]) < 1e-14);
        CHECK(std::abs(ref.cdotc(x.data(), y0.data(), n) - simd->cdotc(x.data(), y0.data(), n)) < 1e-12);
        CHECK(ref.weighted_norm_sq(w.data(), x.data(), n) ==
              doctest::Approx(simd->weighted_norm_sq(w.data(), x.data(), n)).epsilon(1e-14));
    }
}

TEST_CASE("backend selection") {
    BackendGuard guard;
    kernels::select_backend(kernels::Backend::scalar);
    CHECK(kernels::active_backend() == kernels::Backend::scalar);
    CHECK(kernels::active().name == "scalar");
    if (kernels::available(kernels::Backend::avx2)) {
        kernels::select_backend(kernels::Backend::avx2);
        CHECK(kernels::active().name == "avx2");
    } else {
        CHECK_THROWS(kernels::select_backend(kernels::Backend::avx2));
    }
}

TEST_CASE("protocol C trajectory is backend independent") {
    if (!kernels::available(kernels::Backend::avx2)) return;
    BackendGuard guard;
    auto config = ProtocolConfig::defaults(Protocol::c_continuous_rotation);
    config.atoms_1 = config.atoms_2 = 8;
    config.photons_phase1 = 300;

    kernels::select_backend(kernels::Backend::scalar);
    Rng r1 = Rng::for_trajectory(5, 0);
    const auto a = run_trajectory(config, r1);
    kernels::select_backend(kernels::Backend::avx2);
    Rng r2 = Rng::for_trajectory(5, 0);
    const auto b = run_trajectory(config, r2);

    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        REQUIRE(a.rows[i].detector == b.rows[i].detector);
        CHECK(a.rows[i].metrics.entropy_bits == doctest::Approx(b.rows[i].metrics.entropy_bits).epsilon(1e-9));
        CHECK(*a.rows[i].metrics.overlap_psi0 == doctest::Approx(*b.rows[i].metrics.overlap_psi0).epsilon(1e-9));
    }
}
