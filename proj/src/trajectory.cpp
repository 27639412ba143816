#include "qndsim/trajectory.hpp"

#include <cmath>
#include <numbers>

#include "qndsim/errors.hpp"
#include "qndsim/rotation.hpp"

namespace qnd {

std::string_view protocol_tag(Protocol p) noexcept {
    switch (p) {
        case Protocol::a_pure_jz: return "a";
        case Protocol::b_measure_rotate_measure: return "b";
        case Protocol::c_continuous_rotation: return "c";
    }
    return "?";
}

std::optional<Protocol> parse_protocol(std::string_view tag) noexcept {
    if (tag == "a" || tag == "A") return Protocol::a_pure_jz;
    if (tag == "b" || tag == "B") return Protocol::b_measure_rotate_measure;
    if (tag == "c" || tag == "C") return Protocol::c_continuous_rotation;
    return std::nullopt;
}

double default_rotation_angle(Protocol p) noexcept {
    return p == Protocol::b_measure_rotate_measure ? std::numbers::pi / 2 : std::numbers::pi / 5;
}

ProtocolConfig ProtocolConfig::defaults(Protocol p) {
    ProtocolConfig c;
    c.protocol = p;
    c.rotation_angle = default_rotation_angle(p);
    return c;
}

int ProtocolConfig::total_photons() const noexcept {
    return protocol == Protocol::b_measure_rotate_measure ? photons_phase1 + photons_phase2 : photons_phase1;
}

void ProtocolConfig::validate() const {
    if (atoms_1 < 1) throw ConfigError("--atoms", "must be >= 1");
    if (atoms_2 < 1) throw ConfigError("--atoms2", "must be >= 1");
    if (!std::isfinite(chi_tau) || chi_tau == 0.0) throw ConfigError("--chi-tau", "must be finite and nonzero");
    if (photons_phase1 < 1) throw ConfigError("--photons", "must be >= 1");
    if (protocol == Protocol::b_measure_rotate_measure && photons_phase2 < 1) {
        throw ConfigError("--photons2", "must be >= 1");
    }
    if (photons_phase2 < 0) throw ConfigError("--photons2", "must be >= 0");
    if (!std::isfinite(rotation_angle)) throw ConfigError("--theta", "must be finite");
    if (trajectories < 1) throw ConfigError("--trajectories", "must be >= 1");
    if (record_stride < 1) throw ConfigError("--stride", "must be >= 1");
}

namespace {

/// Shared click loop. `before_click` runs ahead of every detection.
class Runner {
public:
    Runner(const ProtocolConfig& config, Rng& rng, int trajectory_id)
        : config_(config),
          rng_(rng),
          first_(config.atoms_1),
          second_(config.atoms_2),
          clicks_(first_, second_, config.chi_tau),
          state_(binomial_initial_state(first_, second_)),
          total_(config.total_photons()) {
        trace_.trajectory_id = trajectory_id;
        trace_.rows.reserve(static_cast<std::size_t>((total_ + config.record_stride - 1) / config.record_stride));
    }

    JointAmplitudes& state() { return state_; }
    const SpinBasis& first() const { return first_; }
    const SpinBasis& second() const { return second_; }

    void click() {
        ++photon_;
        const ClickRecord rec = clicks_.sample_in_place(state_, rng_, photon_);
        if (rec.detector == Detector::plus) ++n_plus_;
        if (photon_ % config_.record_stride == 0 || photon_ == total_) {
            trace_.rows.push_back({photon_, rec.detector, measure_metrics(state_)});
        }
    }

    int photon() const { return photon_; }

    TrajectoryTrace finish() {
        trace_.final_summary.entropy_bits = entanglement_entropy(state_);
        if (first_ == second_) trace_.final_summary.overlap_psi0 = overlap_psi0(state_);
        trace_.final_summary.n_plus_total = n_plus_;
        return std::move(trace_);
    }

    TrajectoryTrace& trace() { return trace_; }

private:
    const ProtocolConfig& config_;
    Rng& rng_;
    SpinBasis first_;
    SpinBasis second_;
    ClickModel clicks_;
    JointAmplitudes state_;
    int total_;
    int photon_ = 0;
    int n_plus_ = 0;
    TrajectoryTrace trace_;
};

void require(const ProtocolConfig& config, Protocol p) {
    config.validate();
    if (config.protocol != p) {
        throw InvalidArgument(std::string("config is for protocol ") + std::string(protocol_tag(config.protocol)) +
                              ", expected " + std::string(protocol_tag(p)));
    }
}

}  // namespace

TrajectoryTrace run_protocol_a(const ProtocolConfig& config, Rng& rng, int trajectory_id) {
    require(config, Protocol::a_pure_jz);
    Runner run(config, rng, trajectory_id);
    for (int i = 0; i < config.photons_phase1; ++i) run.click();
    return run.finish();
}

TrajectoryTrace run_protocol_b(const ProtocolConfig& config, Rng& rng, int trajectory_id) {
    require(config, Protocol::b_measure_rotate_measure);
    Runner run(config, rng, trajectory_id);
    for (int i = 0; i < config.photons_phase1; ++i) run.click();
    OppositeRotation(run.first(), run.second(), config.rotation_angle).apply(run.state());
    run.trace().rotation_after_photon = run.photon();
    for (int i = 0; i < config.photons_phase2; ++i) run.click();
    return run.finish();
}

TrajectoryTrace run_protocol_c(const ProtocolConfig& config, Rng& rng, int trajectory_id) {
    require(config, Protocol::c_continuous_rotation);
    Runner run(config, rng, trajectory_id);
    const OppositeRotation rotation(run.first(), run.second(), config.rotation_angle);
    AmplitudeGrid scratch;
    for (int i = 0; i < config.photons_phase1; ++i) {
        rotation.apply(run.state(), scratch);
        run.click();
    }
    return run.finish();
}

TrajectoryTrace run_trajectory(const ProtocolConfig& config, Rng& rng, int trajectory_id) {
    switch (config.protocol) {
        case Protocol::a_pure_jz: return run_protocol_a(config, rng, trajectory_id);
        case Protocol::b_measure_rotate_measure: return run_protocol_b(config, rng, trajectory_id);
        case Protocol::c_continuous_rotation: return run_protocol_c(config, rng, trajectory_id);
    }
    throw InvalidArgument("unknown protocol");
}

}  // namespace qnd
