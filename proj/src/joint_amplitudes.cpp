#include "qndsim/joint_amplitudes.hpp"

#include <cmath>
#include <string>

#include "qndsim/errors.hpp"
#include "qndsim/kernels.hpp"

namespace qnd {

JointAmplitudes::JointAmplitudes(SpinBasis first, SpinBasis second, AmplitudeGrid grid)
    : first_(first), second_(second), grid_(std::move(grid)) {
    if (grid_.rows() != first_.dim() || grid_.cols() != second_.dim()) {
        throw InvalidState("amplitude grid is " + std::to_string(grid_.rows()) + "x" +
                           std::to_string(grid_.cols()) + ", bases require " +
                           std::to_string(first_.dim()) + "x" + std::to_string(second_.dim()));
    }
}

JointAmplitudes JointAmplitudes::zeros(SpinBasis first, SpinBasis second) {
    return JointAmplitudes(first, second, AmplitudeGrid::Zero(first.dim(), second.dim()));
}

double JointAmplitudes::norm_squared() const { return kernels::norm_sq(flat()); }

void JointAmplitudes::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw InvalidState("cannot normalize a zero or non-finite state");
    kernels::scale(1.0 / std::sqrt(n2), flat());
}

cplx inner_product(const JointAmplitudes& a, const JointAmplitudes& b) {
    if (a.first() != b.first() || a.second() != b.second()) {
        throw InvalidState("inner product of states on different bases");
    }
    return kernels::cdotc(a.flat(), b.flat());
}

double fidelity(const JointAmplitudes& a, const JointAmplitudes& b) {
    return std::norm(inner_product(a, b));
}

Eigen::VectorXd binomial_amplitudes(const SpinBasis& basis) {
    const int n = basis.atom_count();
    Eigen::VectorXd amps(basis.dim());
    // |A_M|^2 = C(N, J+M) / 2^N, with J+M = grid index.
    const double log_norm = std::lgamma(n + 1.0) - n * std::log(2.0);
    for (int i = 0; i <= n; ++i) {
        const double log_p = log_norm - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
        amps(i) = std::exp(0.5 * log_p);
    }
    return amps;
}

JointAmplitudes binomial_initial_state(const SpinBasis& first, const SpinBasis& second) {
    const Eigen::VectorXd a1 = binomial_amplitudes(first);
    const Eigen::VectorXd a2 = binomial_amplitudes(second);
    AmplitudeGrid grid = (a1 * a2.transpose()).cast<cplx>();
    JointAmplitudes state(first, second, std::move(grid));
    // lgamma round-off leaves the norm a few ulp away from one.
    state.normalize();
    return state;
}

JointAmplitudes product_eigenstate(const SpinBasis& first, const SpinBasis& second, int i1, int i2) {
    if (i1 < 0 || i1 >= first.dim() || i2 < 0 || i2 >= second.dim()) {
        throw InvalidArgument("product eigenstate index out of range");
    }
    auto state = JointAmplitudes::zeros(first, second);
    state(i1, i2) = 1.0;
    return state;
}

}  // namespace qnd
