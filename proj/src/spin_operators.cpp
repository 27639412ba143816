#include "qndsim/spin_operators.hpp"

#include <cmath>

#include "qndsim/errors.hpp"
#include "qndsim/kernels.hpp"

namespace qnd {

double ladder_coefficient(double j, double m, Ladder direction) {
    constexpr double eps = 1e-12;
    if (std::abs(m) > j + eps) throw InvalidArgument("ladder_coefficient: |m| > j");
    const double next = direction == Ladder::raise ? m + 1.0 : m - 1.0;
    if (std::abs(next) > j + eps) return 0.0;
    const double arg = j * (j + 1.0) - m * next;
    return arg > 0.0 ? std::sqrt(arg) : 0.0;
}

Eigen::VectorXd jx_offdiagonal(const SpinBasis& basis) {
    Eigen::VectorXd off(basis.dim() - 1);
    for (int k = 0; k + 1 < basis.dim(); ++k) {
        off(k) = 0.5 * ladder_coefficient(basis.total_j(), basis.m(k), Ladder::raise);
    }
    return off;
}

SpinOperators spin_operators(const SpinBasis& basis) {
    const int d = basis.dim();
    SpinOperators ops{Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXcd::Zero(d, d), Eigen::MatrixXd::Zero(d, d)};
    const Eigen::VectorXd off = jx_offdiagonal(basis);
    for (int k = 0; k + 1 < d; ++k) {
        // <k+1| J+ |k> = 2 * off(k)
        ops.jx(k + 1, k) = off(k);
        ops.jx(k, k + 1) = off(k);
        ops.jy(k + 1, k) = cplx(0.0, -off(k));
        ops.jy(k, k + 1) = cplx(0.0, off(k));
    }
    for (int k = 0; k < d; ++k) ops.jz(k, k) = basis.m(k);
    return ops;
}

cplx raising_expectation(const JointAmplitudes& state, Sample which) {
    const SpinBasis& basis = state.basis(which);
    const double j = basis.total_j();
    cplx acc = 0.0;
    if (which == Sample::first) {
        // <psi|J1+|psi> = sum_r c+(M_r) <row r+1 | row r>
        for (int r = 0; r + 1 < state.rows(); ++r) {
            acc += ladder_coefficient(j, basis.m(r), Ladder::raise) * kernels::cdotc(state.row(r + 1), state.row(r));
        }
    } else {
        const auto& g = state.grid();
        for (int c = 0; c + 1 < state.cols(); ++c) {
            cplx col = 0.0;
            for (int r = 0; r < state.rows(); ++r) col += std::conj(g(r, c + 1)) * g(r, c);
            acc += ladder_coefficient(j, basis.m(c), Ladder::raise) * col;
        }
    }
    return acc;
}

double jz_expectation(const JointAmplitudes& state, Sample which) {
    const SpinBasis& basis = state.basis(which);
    double acc = 0.0;
    if (which == Sample::first) {
        for (int r = 0; r < state.rows(); ++r) acc += basis.m(r) * kernels::norm_sq(state.row(r));
    } else {
        const auto& g = state.grid();
        for (int r = 0; r < state.rows(); ++r) {
            for (int c = 0; c < state.cols(); ++c) acc += basis.m(c) * std::norm(g(r, c));
        }
    }
    return acc;
}

SpinMeans spin_expectations(const JointAmplitudes& state) {
    const cplx p1 = raising_expectation(state, Sample::first);
    const cplx p2 = raising_expectation(state, Sample::second);
    return {p1.real() - p2.real(), p1.imag() - p2.imag(),
            jz_expectation(state, Sample::first) + jz_expectation(state, Sample::second)};
}

double casimir_expectation(const JointAmplitudes& state, Sample which) {
    const SpinOperators ops = spin_operators(state.basis(which));
    const Eigen::MatrixXcd a = state.grid();
    // Operators act on the row index for sample 1, on the column index for sample 2.
    auto expect_sq = [&](const Eigen::MatrixXcd& op) {
        const Eigen::MatrixXcd applied = which == Sample::first ? Eigen::MatrixXcd(op * a)
                                                                : Eigen::MatrixXcd(a * op.transpose());
        return applied.squaredNorm();
    };
    return expect_sq(ops.jx.cast<cplx>()) + expect_sq(ops.jy) + expect_sq(ops.jz.cast<cplx>());
}

}  // namespace qnd
