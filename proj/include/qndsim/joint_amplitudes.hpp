#pragma once

#include <complex>
#include <span>

#include <Eigen/Core>

#include "qndsim/spin_basis.hpp"

namespace qnd {

using cplx = std::complex<double>;

/// Dense row-major amplitude grid: row = sample-1 index, column = sample-2 index.
using AmplitudeGrid = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Sample { first, second };

/// Joint state of the two samples, A_{M1,M2} over |M1> (x) |M2>.
///
/// The grid shape is fixed at construction. Public operations keep the state
/// normalized; `mutable_grid()` is for in-place kernels that restore the norm
/// themselves.
class JointAmplitudes {
public:
    /// Throws InvalidState if the grid shape does not match the bases.
    JointAmplitudes(SpinBasis first, SpinBasis second, AmplitudeGrid grid);

    /// All-zero grid; callers fill it and normalize.
    static JointAmplitudes zeros(SpinBasis first, SpinBasis second);

    const SpinBasis& basis(Sample s) const noexcept { return s == Sample::first ? first_ : second_; }
    const SpinBasis& first() const noexcept { return first_; }
    const SpinBasis& second() const noexcept { return second_; }

    int rows() const noexcept { return first_.dim(); }
    int cols() const noexcept { return second_.dim(); }

    const AmplitudeGrid& grid() const noexcept { return grid_; }
    AmplitudeGrid& mutable_grid() noexcept { return grid_; }

    cplx operator()(int i1, int i2) const { return grid_(i1, i2); }
    cplx& operator()(int i1, int i2) { return grid_(i1, i2); }

    std::span<const cplx> row(int i1) const {
        return {grid_.data() + static_cast<std::ptrdiff_t>(i1) * cols(), static_cast<std::size_t>(cols())};
    }
    std::span<cplx> row(int i1) {
        return {grid_.data() + static_cast<std::ptrdiff_t>(i1) * cols(), static_cast<std::size_t>(cols())};
    }
    std::span<const cplx> flat() const { return {grid_.data(), static_cast<std::size_t>(grid_.size())}; }
    std::span<cplx> flat() { return {grid_.data(), static_cast<std::size_t>(grid_.size())}; }

    double norm_squared() const;

    /// Divides by the norm. Throws InvalidState for a zero vector.
    void normalize();

private:
    SpinBasis first_;
    SpinBasis second_;
    AmplitudeGrid grid_;
};

/// <a|b> over the joint grid. Bases must match.
cplx inner_product(const JointAmplitudes& a, const JointAmplitudes& b);

/// |<a|b>|^2, insensitive to global phase.
double fidelity(const JointAmplitudes& a, const JointAmplitudes& b);

/// Product of the x-polarized binomial amplitudes
/// A_M = 2^{-J} sqrt((2J)! / ((J+M)! (J-M)!)) on each sample.
JointAmplitudes binomial_initial_state(const SpinBasis& first, const SpinBasis& second);

/// Single-sample binomial amplitudes, evaluated through lgamma.
Eigen::VectorXd binomial_amplitudes(const SpinBasis& basis);

/// |M1> (x) |M2> given by grid indices.
JointAmplitudes product_eigenstate(const SpinBasis& first, const SpinBasis& second, int i1, int i2);

}  // namespace qnd
