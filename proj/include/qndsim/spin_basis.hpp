#pragma once

#include <vector>

namespace qnd {

/// Dicke basis of one collective spin: N atoms, J = N/2, M = -J..J.
///
/// Grid index i corresponds to M = -J + i, so index 0 is "all atoms in |1>"
/// and index N is "all atoms in |2>".
class SpinBasis {
public:
    /// Throws InvalidArgument unless atom_count >= 1.
    explicit SpinBasis(int atom_count);

    int atom_count() const noexcept { return atoms_; }
    int dim() const noexcept { return atoms_ + 1; }
    double total_j() const noexcept { return 0.5 * atoms_; }

    /// Spin projection M of grid index i.
    double m(int index) const noexcept { return -total_j() + index; }

    /// Atoms in |1> for grid index i: n1 = J - M.
    int atoms_in_state1(int index) const noexcept { return atoms_ - index; }

    std::vector<double> m_values() const;

    friend bool operator==(const SpinBasis&, const SpinBasis&) = default;

private:
    int atoms_;
};

SpinBasis make_basis(int atom_count);

}  // namespace qnd
