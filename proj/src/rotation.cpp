#include "qndsim/rotation.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qndsim/errors.hpp"
#include "qndsim/kernels.hpp"
#include "qndsim/spin_operators.hpp"

namespace qnd {

JxRotationGenerator::JxRotationGenerator(const SpinBasis& basis) : basis_(basis) {
    const Eigen::VectorXd diag = Eigen::VectorXd::Zero(basis.dim());
    const Eigen::VectorXd off = jx_offdiagonal(basis);
    if (basis.dim() == 1) {
        eigenvalues_ = diag;
        eigenvectors_ = Eigen::MatrixXd::Identity(1, 1);
        return;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw InvalidState("J_x eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

Eigen::MatrixXcd JxRotationGenerator::matrix(double angle) const {
    if (!std::isfinite(angle)) throw InvalidArgument("rotation angle must be finite");
    const Eigen::VectorXcd phases =
        (eigenvalues_ * (-angle)).unaryExpr([](double x) { return std::polar(1.0, x); });
    const Eigen::MatrixXcd v = eigenvectors_.cast<cplx>();
    Eigen::MatrixXcd d = v * phases.asDiagonal() * v.transpose();
    if (angle == 0.0) d.setIdentity();
    return d;
}

RotationMatrix rotation_matrix(const SpinBasis& basis, double angle) {
    return {basis, angle, JxRotationGenerator(basis).matrix(angle)};
}

OppositeRotation::OppositeRotation(const SpinBasis& first, const SpinBasis& second, double angle)
    : OppositeRotation(JxRotationGenerator(first), JxRotationGenerator(second), angle) {}

OppositeRotation::OppositeRotation(const JxRotationGenerator& first, const JxRotationGenerator& second,
                                   double angle)
    : first_(first.basis()),
      second_(second.basis()),
      angle_(angle),
      d1_(first.matrix(angle)),
      d2t_(second.matrix(-angle).transpose()) {}

void OppositeRotation::apply(JointAmplitudes& state, AmplitudeGrid& scratch) const {
    if (state.first() != first_ || state.second() != second_) {
        throw InvalidState("rotation built for different sample sizes than the state");
    }
    const int rows = state.rows();
    const int cols = state.cols();
    const auto n = static_cast<std::size_t>(cols);
    AmplitudeGrid& a = state.mutable_grid();
    scratch.setZero(rows, cols);

    // scratch = D1 * A, accumulated row by row.
    for (int i = 0; i < rows; ++i) {
        cplx* out = scratch.data() + static_cast<std::ptrdiff_t>(i) * cols;
        for (int k = 0; k < rows; ++k) {
            kernels::active().caxpy(d1_(i, k), a.data() + static_cast<std::ptrdiff_t>(k) * cols, out, n);
        }
    }
    // A = scratch * D2^T
    a.setZero();
    for (int i = 0; i < rows; ++i) {
        cplx* out = a.data() + static_cast<std::ptrdiff_t>(i) * cols;
        for (int k = 0; k < cols; ++k) {
            kernels::active().caxpy(scratch(i, k), d2t_.data() + static_cast<std::ptrdiff_t>(k) * cols, out, n);
        }
    }
}

void OppositeRotation::apply(JointAmplitudes& state) const {
    AmplitudeGrid scratch;
    apply(state, scratch);
}

JointAmplitudes rotate_opposite(const JointAmplitudes& state, double angle) {
    JointAmplitudes out = state;
    if (angle == 0.0) return out;
    OppositeRotation(state.first(), state.second(), angle).apply(out);
    return out;
}

}  // namespace qnd
