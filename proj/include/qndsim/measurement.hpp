#pragma once

#include <utility>
#include <vector>

#include "qndsim/joint_amplitudes.hpp"
#include "qndsim/rng.hpp"

namespace qnd {

enum class Detector { plus, minus };

struct ClickProbabilities {
    double plus;
    double minus;

    double of(Detector d) const noexcept { return d == Detector::plus ? plus : minus; }
};

/// One detection event.
struct ClickRecord {
    int photon_index;    // 1-based
    Detector detector;
    double probability;  // pre-click probability of the realized outcome
    double chi_tau;
};

/// F_{+/-}(M12) = (1 +/- exp(-i [(N1+N2)/2 - M12] chi_tau)) / 2.
cplx entangling_factor(double m12, int n_total_atoms, double chi_tau, Detector sign);

/// Interferometric single-photon detection on a fixed pair of bases.
///
/// Both the click weights and the entangling factors depend on a cell only
/// through M1 + M2, i.e. through the anti-diagonal index k = i1 + i2, where
/// the number of atoms in |1> is N1 + N2 - k. Tables are indexed by k.
class ClickModel {
public:
    /// Throws InvalidArgument for a non-finite chi_tau.
    ClickModel(const SpinBasis& first, const SpinBasis& second, double chi_tau);

    double chi_tau() const noexcept { return chi_tau_; }

    /// Throws InvalidState if the state's norm deviates from one by more than 1e-6.
    ClickProbabilities probabilities(const JointAmplitudes& state) const;

    /// Multiplies every cell by its entangling factor and renormalizes.
    /// Returns the squared norm before renormalization (the Born probability
    /// for a normalized input). Throws ImpossibleOutcome below 1e-15.
    double project_in_place(JointAmplitudes& state, Detector detector) const;

    /// Draws one uniform number (always, even for deterministic outcomes),
    /// picks plus iff u < pi_plus, and projects in place.
    ClickRecord sample_in_place(JointAmplitudes& state, Rng& rng, int photon_index) const;

    const std::vector<cplx>& factors(Detector d) const noexcept {
        return d == Detector::plus ? f_plus_ : f_minus_;
    }

private:
    void check_bases(const JointAmplitudes& state) const;

    SpinBasis first_;
    SpinBasis second_;
    double chi_tau_;
    std::vector<double> w_plus_;   // cos^2(n1 chi_tau / 2)
    std::vector<double> w_minus_;  // sin^2(n1 chi_tau / 2)
    std::vector<cplx> f_plus_;
    std::vector<cplx> f_minus_;
};

ClickProbabilities click_probabilities(const JointAmplitudes& state, double chi_tau);

JointAmplitudes project_on_click(const JointAmplitudes& state, Detector detector, double chi_tau);

std::pair<ClickRecord, JointAmplitudes> sample_click(const JointAmplitudes& state, double chi_tau, Rng& rng,
                                                     int photon_index = 1);

/// Candidate maxima of the accumulated click likelihood in M12 = M1 + M2,
/// for two samples of N atoms each after n_total clicks, n_plus of them on D+.
struct PeakPrediction {
    std::vector<double> centers;  // ascending, all inside [-N, N]
    double width_rms;             // 1 / (chi_tau sqrt(n_total))
    int n_plus;
    int n_total;
};

/// Solves tan((N - M)/2 * chi_tau) = +/- sqrt((n_total - n_plus)/n_plus) for
/// every branch and period. Choosing among candidates is left to the caller.
PeakPrediction predict_peak(int n_atoms_per_sample, double chi_tau, int n_plus, int n_total);

}  // namespace qnd
