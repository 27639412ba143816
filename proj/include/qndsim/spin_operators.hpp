#pragma once

#include <Eigen/Core>

#include "qndsim/joint_amplitudes.hpp"

namespace qnd {

enum class Ladder { raise, lower };

/// sqrt(j(j+1) - m(m +/- 1)); zero off the ends of the ladder.
/// Throws InvalidArgument if |m| > j.
double ladder_coefficient(double j, double m, Ladder direction);

/// Collective operators of one sample in its Dicke basis, J_x = (J+ + J-)/2.
struct SpinOperators {
    Eigen::MatrixXd jx;
    Eigen::MatrixXcd jy;
    Eigen::MatrixXd jz;
};

SpinOperators spin_operators(const SpinBasis& basis);

/// Real-symmetric tridiagonal J_x, stored as diagonal (zeros) and off-diagonal.
/// Off-diagonal entry k couples indices k and k+1 with value c_+(M_k)/2.
Eigen::VectorXd jx_offdiagonal(const SpinBasis& basis);

struct SpinMeans {
    double jx_diff;  // <J1x - J2x>
    double jy_diff;  // <J1y - J2y>
    double jz_sum;   // <J1z + J2z>
};

/// O(dim1*dim2) via ladder algebra on the grid.
SpinMeans spin_expectations(const JointAmplitudes& state);

/// <J+> of one sample; <J_x> = Re, <J_y> = Im.
cplx raising_expectation(const JointAmplitudes& state, Sample which);

/// <J_z> of one sample.
double jz_expectation(const JointAmplitudes& state, Sample which);

/// <J_x^2 + J_y^2 + J_z^2> of one sample, built from the dense operators.
double casimir_expectation(const JointAmplitudes& state, Sample which);

}  // namespace qnd
