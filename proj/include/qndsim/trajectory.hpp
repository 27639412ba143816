#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qndsim/measurement.hpp"
#include "qndsim/metrics.hpp"
#include "qndsim/rng.hpp"

namespace qnd {

enum class Protocol {
    a_pure_jz,                 // clicks only
    b_measure_rotate_measure,  // clicks, one +/- rotation, clicks
    c_continuous_rotation,     // rotate by +/- theta before every click
};

std::string_view protocol_tag(Protocol p) noexcept;  // "a", "b", "c"
std::optional<Protocol> parse_protocol(std::string_view tag) noexcept;

/// pi/2 for protocol B, pi/5 otherwise.
double default_rotation_angle(Protocol p) noexcept;

struct ProtocolConfig {
    Protocol protocol = Protocol::a_pure_jz;
    int atoms_1 = 20;
    int atoms_2 = 20;
    double chi_tau = 0.24;
    int photons_phase1 = 500;
    int photons_phase2 = 500;  // protocol B only
    double rotation_angle = default_rotation_angle(Protocol::a_pure_jz);
    std::uint64_t seed = 1;
    int trajectories = 50;
    int record_stride = 1;

    static ProtocolConfig defaults(Protocol p);

    /// Clicks in one trajectory.
    int total_photons() const noexcept;

    /// Throws ConfigError naming the CLI flag of the first bad field.
    void validate() const;

    friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

struct TraceRow {
    int photon_index;
    Detector detector;
    MetricsSample metrics;
};

struct FinalSummary {
    double entropy_bits;
    std::optional<double> overlap_psi0;
    int n_plus_total;
};

struct TrajectoryTrace {
    int trajectory_id = 0;
    std::vector<TraceRow> rows;
    FinalSummary final_summary{};
    /// Protocol B: the rotation happened right after this photon.
    std::optional<int> rotation_after_photon;
};

TrajectoryTrace run_protocol_a(const ProtocolConfig& config, Rng& rng, int trajectory_id = 0);
TrajectoryTrace run_protocol_b(const ProtocolConfig& config, Rng& rng, int trajectory_id = 0);
TrajectoryTrace run_protocol_c(const ProtocolConfig& config, Rng& rng, int trajectory_id = 0);

/// Dispatches on config.protocol.
TrajectoryTrace run_trajectory(const ProtocolConfig& config, Rng& rng, int trajectory_id = 0);

}  // namespace qnd
