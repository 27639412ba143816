#include "qndsim/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qndsim/errors.hpp"
#include "qndsim/kernels.hpp"

namespace qnd {
namespace {

constexpr double kNormTolerance = 1e-6;
constexpr double kImpossible = 1e-15;

}  // namespace

cplx entangling_factor(double m12, int n_total_atoms, double chi_tau, Detector sign) {
    const double phase = (0.5 * n_total_atoms - m12) * chi_tau;
    const cplx e = std::polar(1.0, -phase);
    return sign == Detector::plus ? 0.5 * (1.0 + e) : 0.5 * (1.0 - e);
}

ClickModel::ClickModel(const SpinBasis& first, const SpinBasis& second, double chi_tau)
    : first_(first), second_(second), chi_tau_(chi_tau) {
    if (!std::isfinite(chi_tau)) throw InvalidArgument("chi_tau must be finite");
    const int n_total = first.atom_count() + second.atom_count();
    const auto diagonals = static_cast<std::size_t>(first.dim() + second.dim() - 1);
    w_plus_.resize(diagonals);
    w_minus_.resize(diagonals);
    f_plus_.resize(diagonals);
    f_minus_.resize(diagonals);
    const double m_min = -(first.total_j() + second.total_j());
    for (std::size_t k = 0; k < diagonals; ++k) {
        const double m12 = m_min + static_cast<double>(k);
        const double half_phase = (0.25 * n_total - 0.5 * m12) * chi_tau;
        const double c = std::cos(half_phase);
        const double s = std::sin(half_phase);
        w_plus_[k] = c * c;
        w_minus_[k] = s * s;
        f_plus_[k] = entangling_factor(m12, n_total, chi_tau, Detector::plus);
        f_minus_[k] = entangling_factor(m12, n_total, chi_tau, Detector::minus);
    }
}

void ClickModel::check_bases(const JointAmplitudes& state) const {
    if (state.first() != first_ || state.second() != second_) {
        throw InvalidState("click model built for different sample sizes than the state");
    }
}

ClickProbabilities ClickModel::probabilities(const JointAmplitudes& state) const {
    check_bases(state);
    double plus = 0.0;
    double minus = 0.0;
    const auto cols = static_cast<std::size_t>(state.cols());
    for (int r = 0; r < state.rows(); ++r) {
        // Row r meets anti-diagonals r .. r + cols - 1.
        const std::span<const double> wp(w_plus_.data() + r, cols);
        const std::span<const double> wm(w_minus_.data() + r, cols);
        plus += kernels::weighted_norm_sq(wp, state.row(r));
        minus += kernels::weighted_norm_sq(wm, state.row(r));
    }
    const double total = plus + minus;
    if (!(std::abs(total - 1.0) <= kNormTolerance)) {
        throw InvalidState("click probabilities need a normalized state, norm^2 = " + std::to_string(total));
    }
    return {plus / total, minus / total};
}

double ClickModel::project_in_place(JointAmplitudes& state, Detector detector) const {
    check_bases(state);
    const std::vector<cplx>& f = factors(detector);
    const auto cols = static_cast<std::size_t>(state.cols());
    for (int r = 0; r < state.rows(); ++r) {
        kernels::cmul(std::span<const cplx>(f.data() + r, cols), state.row(r));
    }
    const double n2 = state.norm_squared();
    if (!(n2 >= kImpossible)) {
        throw ImpossibleOutcome(std::string("projection onto D") + (detector == Detector::plus ? "+" : "-") +
                                " with probability " + std::to_string(n2));
    }
    kernels::scale(1.0 / std::sqrt(n2), state.flat());
    return n2;
}

ClickRecord ClickModel::sample_in_place(JointAmplitudes& state, Rng& rng, int photon_index) const {
    const ClickProbabilities p = probabilities(state);
    const double u = rng.uniform();
    const Detector d = u < p.plus ? Detector::plus : Detector::minus;
    project_in_place(state, d);
    return {photon_index, d, p.of(d), chi_tau_};
}

ClickProbabilities click_probabilities(const JointAmplitudes& state, double chi_tau) {
    return ClickModel(state.first(), state.second(), chi_tau).probabilities(state);
}

JointAmplitudes project_on_click(const JointAmplitudes& state, Detector detector, double chi_tau) {
    JointAmplitudes out = state;
    ClickModel(state.first(), state.second(), chi_tau).project_in_place(out, detector);
    return out;
}

std::pair<ClickRecord, JointAmplitudes> sample_click(const JointAmplitudes& state, double chi_tau, Rng& rng,
                                                     int photon_index) {
    JointAmplitudes out = state;
    const ClickRecord rec = ClickModel(state.first(), state.second(), chi_tau).sample_in_place(out, rng, photon_index);
    return {rec, std::move(out)};
}

PeakPrediction predict_peak(int n_atoms_per_sample, double chi_tau, int n_plus, int n_total) {
    if (n_atoms_per_sample < 1) throw InvalidArgument("predict_peak: n_atoms_per_sample must be >= 1");
    if (n_total < 1) throw InvalidArgument("predict_peak: n_total must be >= 1");
    if (n_plus < 0 || n_plus > n_total) {
        throw InvalidArgument("predict_peak: n_plus must lie in [0, n_total], got " + std::to_string(n_plus));
    }
    if (chi_tau == 0.0 || !std::isfinite(chi_tau)) throw InvalidArgument("predict_peak: chi_tau must be nonzero");

    const double n = n_atoms_per_sample;
    const double pi = std::numbers::pi;
    // x = (N - M) chi_tau / 2 covers [0, N chi_tau] as M runs over [N, -N].
    const double x_lo = std::min(0.0, n * chi_tau);
    const double x_hi = std::max(0.0, n * chi_tau);

    std::vector<double> bases;
    if (n_plus == 0) {
        bases = {pi / 2};
    } else {
        const double a = std::atan(std::sqrt(static_cast<double>(n_total - n_plus) / n_plus));
        bases = {a, -a};
    }

    constexpr double eps = 1e-9;
    std::vector<double> centers;
    const auto k_lo = static_cast<long>(std::floor(x_lo / pi)) - 1;
    const auto k_hi = static_cast<long>(std::ceil(x_hi / pi)) + 1;
    for (long k = k_lo; k <= k_hi; ++k) {
        for (double b : bases) {
            const double x = b + static_cast<double>(k) * pi;
            if (x < x_lo - eps || x > x_hi + eps) continue;
            const double m = n - 2.0 * x / chi_tau;
            centers.push_back(std::clamp(m, -n, n));
        }
    }
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                  centers.end());

    return {std::move(centers), 1.0 / (std::abs(chi_tau) * std::sqrt(static_cast<double>(n_total))), n_plus,
            n_total};
}

}  // namespace qnd
