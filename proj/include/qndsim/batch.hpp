#pragma once

#include <optional>
#include <vector>

#include "qndsim/trajectory.hpp"

namespace qnd {

/// Fraction of trajectories captured by psi0 (final overlap >= threshold),
/// with a 95% Wilson score interval.
struct CaptureStatistic {
    int captured = 0;
    int total = 0;
    double threshold = 0.99;
    double fraction = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

/// Wilson score interval for `successes` out of `trials` at normal quantile z.
CaptureStatistic wilson_capture(int successes, int trials, double threshold, double z = 1.959963984540054);

struct AverageRow {
    int photon_index;
    MetricsSample mean;
};

struct BatchResult {
    std::vector<TrajectoryTrace> traces;  // ordered by trajectory id
    std::vector<AverageRow> average;
    std::optional<CaptureStatistic> capture;  // equal samples only
};

struct BatchOptions {
    int threads = 0;  // 0: hardware concurrency
    double capture_threshold = 0.99;
};

/// Runs config.trajectories independent trajectories. Trajectory t draws from
/// Rng::for_trajectory(config.seed, t), so the result does not depend on the
/// thread count or on scheduling.
BatchResult run_batch(const ProtocolConfig& config, const BatchOptions& options = {});

/// Arithmetic mean of every metric at every recorded photon index.
/// Throws InvalidArgument if traces were recorded at different photon indices.
std::vector<AverageRow> average_traces(const std::vector<TrajectoryTrace>& traces);

}  // namespace qnd
