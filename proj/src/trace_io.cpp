#include "qndsim/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "qndsim/errors.hpp"

namespace qnd {
namespace {

void append_number(std::string& out, double v) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof(buf), "%.15g", v);
    out.append(buf, static_cast<std::size_t>(n));
}

void append_metrics(std::string& out, const MetricsSample& m) {
    append_number(out, m.entropy_bits);
    out += ',';
    append_number(out, m.variance_jz_sum);
    out += ',';
    if (m.overlap_psi0) append_number(out, *m.overlap_psi0);
    out += ',';
    append_number(out, m.mean_jx_diff);
    out += ',';
    append_number(out, m.mean_jy_diff);
    out += ',';
    append_number(out, m.mean_jz_sum);
    out += '\n';
}

}  // namespace

std::string format_trace_csv(const TrajectoryTrace& trace) {
    std::string out(kTraceHeader);
    out += '\n';
    for (const TraceRow& row : trace.rows) {
        out += std::to_string(row.photon_index);
        out += row.detector == Detector::plus ? ",+," : ",-,";
        append_metrics(out, row.metrics);
    }
    return out;
}

std::string format_average_csv(const std::vector<AverageRow>& rows) {
    std::string out(kAverageHeader);
    out += '\n';
    for (const AverageRow& row : rows) {
        out += std::to_string(row.photon_index);
        out += ',';
        append_metrics(out, row.mean);
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (out) out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError(path, "write failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError(path, "rename failed: " + ec.message());
    }
}

void write_trace_csv(const TrajectoryTrace& trace, const std::filesystem::path& path) {
    write_text_file(path, format_trace_csv(trace));
}

void write_batch_summary(const BatchResult& result, RunManifest manifest, const std::filesystem::path& run_dir) {
    manifest.average_file = "average.csv";
    manifest.capture = result.capture;
    if (!result.traces.empty()) manifest.rotation_after_photon = result.traces.front().rotation_after_photon;
    write_text_file(run_dir / manifest.average_file, format_average_csv(result.average));
    write_text_file(run_dir / "manifest.txt", format_manifest(manifest));
}

std::filesystem::path run_directory(const std::filesystem::path& out_root, const ProtocolConfig& config) {
    return out_root / ("protocol-" + std::string(protocol_tag(config.protocol)) + "_seed-" + std::to_string(config.seed));
}

std::string trajectory_file_name(int trajectory_id) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "trajectory_%04d.csv", trajectory_id);
    return buf;
}

}  // namespace qnd
