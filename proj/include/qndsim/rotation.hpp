#pragma once

#include <Eigen/Core>

#include "qndsim/joint_amplitudes.hpp"

namespace qnd {

/// D^J(theta) = exp(-i J_x theta) in the Dicke basis of one sample.
struct RotationMatrix {
    SpinBasis basis;
    double angle;
    Eigen::MatrixXcd matrix;
};

/// Eigendecomposition of the tridiagonal J_x of one basis. Build once, then
/// evaluate exp(-i J_x theta) = V exp(-i theta lambda) V^T for any angle.
/// Immutable after construction, so one instance may be shared across threads.
class JxRotationGenerator {
public:
    explicit JxRotationGenerator(const SpinBasis& basis);

    const SpinBasis& basis() const noexcept { return basis_; }
    const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }

    /// Throws InvalidArgument for a non-finite angle.
    Eigen::MatrixXcd matrix(double angle) const;

private:
    SpinBasis basis_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

RotationMatrix rotation_matrix(const SpinBasis& basis, double angle);

/// D1(theta) (x) D2(-theta): sample 1 rotated by +theta about x, sample 2 by -theta.
///
/// Acts on the grid as A -> D1 A D2^T, i.e. two small matrix products; the
/// joint (dim1*dim2)^2 operator is never formed.
class OppositeRotation {
public:
    OppositeRotation(const SpinBasis& first, const SpinBasis& second, double angle);
    OppositeRotation(const JxRotationGenerator& first, const JxRotationGenerator& second, double angle);

    double angle() const noexcept { return angle_; }

    /// `scratch` is resized as needed; reuse it across calls in a hot loop.
    void apply(JointAmplitudes& state, AmplitudeGrid& scratch) const;
    void apply(JointAmplitudes& state) const;

private:
    SpinBasis first_;
    SpinBasis second_;
    double angle_;
    AmplitudeGrid d1_;   // D1(theta), row-major
    AmplitudeGrid d2t_;  // D2(-theta)^T, row-major
};

/// Throws InvalidState if the state was built on other bases than its grid implies.
JointAmplitudes rotate_opposite(const JointAmplitudes& state, double angle);

}  // namespace qnd
