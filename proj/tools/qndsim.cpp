// qndsim: run a batch of measurement trajectories and write CSV traces,
// an averaged curve and a manifest under <out>/protocol-<p>_seed-<seed>/.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>

#include "qndsim/batch.hpp"
#include "qndsim/config_io.hpp"
#include "qndsim/errors.hpp"
#include "qndsim/kernels.hpp"
#include "qndsim/trace_io.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

void print_summary(const qnd::ProtocolConfig& config, const qnd::BatchResult& result,
                   const std::filesystem::path& dir) {
    const auto& last = result.average.back().mean;
    std::printf("protocol %s: %d trajectories x %d photons (N1=%d, N2=%d, chi_tau=%g)\n",
                std::string(qnd::protocol_tag(config.protocol)).c_str(), config.trajectories,
                config.total_photons(), config.atoms_1, config.atoms_2, config.chi_tau);
    std::printf("  final mean entropy      %.6f bits\n", last.entropy_bits);
    std::printf("  final mean var(J1z+J2z) %.6f\n", last.variance_jz_sum);
    if (last.overlap_psi0) std::printf("  final mean overlap psi0 %.6f\n", *last.overlap_psi0);
    if (result.capture) {
        const auto& c = *result.capture;
        std::printf("  captured by psi0        %d/%d = %.4f  (95%% CI %.4f .. %.4f)\n", c.captured, c.total,
                    c.fraction, c.ci_low, c.ci_high);
    }
    std::printf("  output                  %s\n", dir.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
    qnd::CliOptions options;
    try {
        options = qnd::parse_config(argc, argv);
    } catch (const qnd::Error& e) {
        std::cerr << "qndsim: usage error: " << e.what() << "\nRun with --help for options.\n";
        return kExitUsage;
    }
    if (options.help) {
        std::cout << options.help_text;
        return 0;
    }

    try {
        if (options.kernels) qnd::kernels::select_backend(*options.kernels);

        qnd::RunManifest manifest;
        manifest.config = options.config;
        manifest.kernels = std::string(qnd::kernels::backend_name(qnd::kernels::active_backend()));
        manifest.started = qnd::utc_timestamp_now();

        qnd::BatchOptions batch_options;
        batch_options.threads = options.threads;
        const qnd::BatchResult result = qnd::run_batch(options.config, batch_options);
        manifest.finished = qnd::utc_timestamp_now();

        const auto dir = qnd::run_directory(options.out_dir, options.config);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw qnd::IoError(dir, "cannot create directory: " + ec.message());

        for (const auto& trace : result.traces) {
            const std::string name = qnd::trajectory_file_name(trace.trajectory_id);
            qnd::write_trace_csv(trace, dir / name);
            manifest.trajectory_files.emplace_back(name);
        }
        qnd::write_batch_summary(result, manifest, dir);

        if (!options.quiet) print_summary(options.config, result, dir);
    } catch (const std::exception& e) {
        std::cerr << "qndsim: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
