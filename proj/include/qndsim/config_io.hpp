#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qndsim/batch.hpp"
#include "qndsim/kernels.hpp"
#include "qndsim/trajectory.hpp"

namespace qnd {

inline constexpr std::string_view kArtifactVersion = "0.1.0";

/// Fields set explicitly by one configuration source (file or flags).
struct ConfigOverrides {
    std::optional<Protocol> protocol;
    std::optional<int> atoms;
    std::optional<int> atoms2;
    std::optional<double> chi_tau;
    std::optional<int> photons;
    std::optional<int> photons2;
    std::optional<double> theta;
    std::optional<int> trajectories;
    std::optional<std::uint64_t> seed;
    std::optional<int> stride;

    /// Fields set in `higher` win.
    void merge_from(const ConfigOverrides& higher);

    /// Fills the unset fields with defaults (atoms2 follows atoms, theta
    /// follows the protocol) and validates. Throws ConfigError.
    ProtocolConfig resolve() const;
};

/// Parses `key = value` lines. Only the `[config]` section (or lines before
/// any section header) is read; other manifest sections are ignored.
/// Throws ConfigError on unknown keys or malformed values.
ConfigOverrides parse_config_text(std::string_view text);
ConfigOverrides read_config_file(const std::filesystem::path& path);

/// `[config]` section listing every field; parses back to the same config.
std::string format_config_section(const ProtocolConfig& config);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

struct CliOptions {
    ProtocolConfig config;
    std::filesystem::path out_dir = "runs";
    int threads = 0;
    std::optional<kernels::Backend> kernels;
    bool quiet = false;
    bool help = false;
    std::string help_text;
};

/// Command-line arguments without the program name. Flags override values
/// from `--config <file>`. Throws ConfigError on any usage problem.
CliOptions parse_config(std::span<const std::string> args);
CliOptions parse_config(int argc, const char* const* argv);

struct RunManifest {
    ProtocolConfig config;
    std::string artifact_version{kArtifactVersion};
    std::string kernels;
    std::string started;
    std::string finished;
    std::optional<int> rotation_after_photon;
    std::vector<std::filesystem::path> trajectory_files;
    std::filesystem::path average_file;
    std::optional<CaptureStatistic> capture;
};

std::string format_manifest(const RunManifest& manifest);

/// UTC, ISO 8601 with seconds.
std::string utc_timestamp_now();

}  // namespace qnd
