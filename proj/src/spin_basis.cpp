#include "qndsim/spin_basis.hpp"

#include <string>

#include "qndsim/errors.hpp"

namespace qnd {

SpinBasis::SpinBasis(int atom_count) : atoms_(atom_count) {
    if (atom_count < 1) {
        throw InvalidArgument("atom_count must be >= 1, got " + std::to_string(atom_count));
    }
}

std::vector<double> SpinBasis::m_values() const {
    std::vector<double> out(static_cast<std::size_t>(dim()));
    for (int i = 0; i < dim(); ++i) out[static_cast<std::size_t>(i)] = m(i);
    return out;
}

SpinBasis make_basis(int atom_count) { return SpinBasis(atom_count); }

}  // namespace qnd
