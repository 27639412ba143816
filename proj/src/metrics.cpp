#include "qndsim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qndsim/errors.hpp"
#include "qndsim/kernels.hpp"

namespace qnd {

Eigen::MatrixXcd reduced_density_matrix(const JointAmplitudes& state, Sample which) {
    if (which == Sample::first) {
        const int d = state.rows();
        Eigen::MatrixXcd rho(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = i; j < d; ++j) {
                // sum_c A[i,c] conj(A[j,c])
                const cplx v = kernels::cdotc(state.row(j), state.row(i));
                rho(i, j) = v;
                rho(j, i) = std::conj(v);
            }
        }
        return rho;
    }
    const auto& a = state.grid();
    // rho_2[c, c'] = sum_r A[r,c] conj(A[r,c'])
    Eigen::MatrixXcd rho = a.transpose() * a.conjugate();
    return rho;
}

double von_neumann_entropy_bits(const Eigen::MatrixXcd& rho) {
    const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw InvalidState("density matrix eigensolver failed");
    double s = 0.0;
    for (double lambda : solver.eigenvalues()) {
        if (lambda > 1e-14) s -= lambda * std::log2(lambda);
    }
    return std::max(s, 0.0);
}

double entanglement_entropy(const JointAmplitudes& state, Sample which) {
    return von_neumann_entropy_bits(reduced_density_matrix(state, which));
}

double entanglement_entropy(const JointAmplitudes& state) { return entanglement_entropy(state, Sample::first); }

double variance_jz_sum(const JointAmplitudes& state) {
    const double m_min = -(state.first().total_j() + state.second().total_j());
    const auto& a = state.grid();
    double mean = 0.0;
    double second_moment = 0.0;
    for (int r = 0; r < state.rows(); ++r) {
        for (int c = 0; c < state.cols(); ++c) {
            const double p = std::norm(a(r, c));
            const double m12 = m_min + r + c;
            mean += p * m12;
            second_moment += p * m12 * m12;
        }
    }
    return std::max(second_moment - mean * mean, 0.0);
}

JointAmplitudes psi0_state(const SpinBasis& basis) {
    auto state = JointAmplitudes::zeros(basis, basis);
    const double amp = 1.0 / std::sqrt(static_cast<double>(basis.dim()));
    // Cell (M, -M) sits at indices (i, dim-1-i).
    for (int i = 0; i < basis.dim(); ++i) state(i, basis.dim() - 1 - i) = amp;
    return state;
}

double overlap_psi0(const JointAmplitudes& state) {
    if (state.first() != state.second()) {
        throw UnsupportedConfiguration("overlap with psi0 needs equal atom counts in both samples");
    }
    const int d = state.rows();
    cplx acc = 0.0;
    for (int i = 0; i < d; ++i) acc += state(i, d - 1 - i);
    return std::clamp(std::norm(acc) / d, 0.0, 1.0);
}

MetricsSample measure_metrics(const JointAmplitudes& state) {
    MetricsSample out;
    out.entropy_bits = entanglement_entropy(state);
    out.variance_jz_sum = variance_jz_sum(state);
    if (state.first() == state.second()) out.overlap_psi0 = overlap_psi0(state);
    const SpinMeans means = spin_expectations(state);
    out.mean_jx_diff = means.jx_diff;
    out.mean_jy_diff = means.jy_diff;
    out.mean_jz_sum = means.jz_sum;
    return out;
}

}  // namespace qnd
