#include "qndsim/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qndsim/errors.hpp"

namespace qnd {

CaptureStatistic wilson_capture(int successes, int trials, double threshold, double z) {
    if (trials < 1 || successes < 0 || successes > trials) throw InvalidArgument("wilson_capture: bad counts");
    const double n = trials;
    const double p = successes / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {successes, trials, threshold, p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<AverageRow> average_traces(const std::vector<TrajectoryTrace>& traces) {
    std::vector<AverageRow> avg;
    if (traces.empty()) return avg;
    const auto& ref = traces.front().rows;
    avg.reserve(ref.size());
    for (const auto& row : ref) {
        MetricsSample m;
        if (row.metrics.overlap_psi0) m.overlap_psi0 = 0.0;
        avg.push_back({row.photon_index, m});
    }
    for (const auto& t : traces) {
        if (t.rows.size() != ref.size()) throw InvalidArgument("average_traces: row counts differ");
        for (std::size_t i = 0; i < ref.size(); ++i) {
            const TraceRow& row = t.rows[i];
            if (row.photon_index != avg[i].photon_index) {
                throw InvalidArgument("average_traces: photon indices differ");
            }
            MetricsSample& m = avg[i].mean;
            m.entropy_bits += row.metrics.entropy_bits;
            m.variance_jz_sum += row.metrics.variance_jz_sum;
            if (m.overlap_psi0 && row.metrics.overlap_psi0) *m.overlap_psi0 += *row.metrics.overlap_psi0;
            m.mean_jx_diff += row.metrics.mean_jx_diff;
            m.mean_jy_diff += row.metrics.mean_jy_diff;
            m.mean_jz_sum += row.metrics.mean_jz_sum;
        }
    }
    const double n = static_cast<double>(traces.size());
    for (auto& row : avg) {
        MetricsSample& m = row.mean;
        m.entropy_bits /= n;
        m.variance_jz_sum /= n;
        if (m.overlap_psi0) *m.overlap_psi0 /= n;
        m.mean_jx_diff /= n;
        m.mean_jy_diff /= n;
        m.mean_jz_sum /= n;
    }
    return avg;
}

BatchResult run_batch(const ProtocolConfig& config, const BatchOptions& options) {
    config.validate();
    const int count = config.trajectories;
    int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, count);

    BatchResult result;
    result.traces.resize(static_cast<std::size_t>(count));

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int t = next.fetch_add(1); t < count; t = next.fetch_add(1)) {
            try {
                Rng rng = Rng::for_trajectory(config.seed, static_cast<std::uint64_t>(t));
                result.traces[static_cast<std::size_t>(t)] = run_trajectory(config, rng, t);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    result.average = average_traces(result.traces);
    if (config.atoms_1 == config.atoms_2) {
        const int captured = static_cast<int>(std::count_if(result.traces.begin(), result.traces.end(), [&](const auto& t) {
            return t.final_summary.overlap_psi0.value_or(0.0) >= options.capture_threshold;
        }));
        result.capture = wilson_capture(captured, count, options.capture_threshold);
    }
    return result;
}

}  // namespace qnd
