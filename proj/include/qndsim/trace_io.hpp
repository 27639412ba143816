#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qndsim/batch.hpp"
#include "qndsim/config_io.hpp"

namespace qnd {

inline constexpr std::string_view kTraceHeader =
    "photon_index,detector,entropy_bits,variance_jz_sum,overlap_psi0,mean_jx_diff,mean_jy_diff,mean_jz_sum";
inline constexpr std::string_view kAverageHeader =
    "photon_index,entropy_bits,variance_jz_sum,overlap_psi0,mean_jx_diff,mean_jy_diff,mean_jz_sum";

std::string format_trace_csv(const TrajectoryTrace& trace);
std::string format_average_csv(const std::vector<AverageRow>& rows);

/// Writes through a temporary sibling and renames it into place; on failure
/// the temporary is removed and IoError names the target path.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

void write_trace_csv(const TrajectoryTrace& trace, const std::filesystem::path& path);

/// Writes average.csv and manifest.txt into `run_dir`. The manifest lists the
/// trajectory files already present in `manifest.trajectory_files`.
void write_batch_summary(const BatchResult& result, RunManifest manifest, const std::filesystem::path& run_dir);

/// `<out_root>/protocol-<tag>_seed-<seed>`
std::filesystem::path run_directory(const std::filesystem::path& out_root, const ProtocolConfig& config);

std::string trajectory_file_name(int trajectory_id);

}  // namespace qnd
