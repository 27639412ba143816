#pragma once

#include <optional>

#include <Eigen/Core>

#include "qndsim/joint_amplitudes.hpp"
#include "qndsim/spin_operators.hpp"

namespace qnd {

/// Observables recorded along a trajectory.
struct MetricsSample {
    double entropy_bits = 0.0;
    double variance_jz_sum = 0.0;
    std::optional<double> overlap_psi0;  // only for equal samples
    double mean_jx_diff = 0.0;
    double mean_jy_diff = 0.0;
    double mean_jz_sum = 0.0;
};

/// rho_1[M1, M1'] = sum_{M2} A_{M1,M2} conj(A_{M1',M2}) (or the sample-2 analogue).
Eigen::MatrixXcd reduced_density_matrix(const JointAmplitudes& state, Sample which);

/// -Tr(rho log2 rho) from the Hermitian part of rho; eigenvalues <= 1e-14 contribute 0.
double von_neumann_entropy_bits(const Eigen::MatrixXcd& rho);

/// Entanglement entropy in bits, computed from rho_1.
double entanglement_entropy(const JointAmplitudes& state);
double entanglement_entropy(const JointAmplitudes& state, Sample which);

/// Variance of J1z + J2z, clamped at zero.
double variance_jz_sum(const JointAmplitudes& state);

/// (2J+1)^{-1/2} sum_M |M, -M>.
JointAmplitudes psi0_state(const SpinBasis& basis);

/// |<psi0|state>|^2. Throws UnsupportedConfiguration when N1 != N2.
double overlap_psi0(const JointAmplitudes& state);

MetricsSample measure_metrics(const JointAmplitudes& state);

}  // namespace qnd
