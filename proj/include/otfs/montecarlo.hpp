#pragma once

#include <cstdint>
#include <vector>

#include "otfs/protocol.hpp"

namespace otfs {

struct McConfig {
    long long trials = 100000;
    std::uint64_t master_seed = 1;
    int parallelism = 0; // 0 = auto (env OTFS_CDRT_WORKERS, then hardware)
};

struct OutageEstimate {
    double p_hat = 0.0;
    double ci95_halfwidth = 0.0;
    long long trials = 0;
    bool low_confidence = false; // fewer than 10 outage events observed
};

struct OutageEstimates {
    OutageEstimate xc;
    OutageEstimate xe;
    OutageEstimate xbarc;
};

/// Number of worker threads for the given hint.
int resolve_workers(int hint);

/**
 * Runs mc.trials independent trials of the scenario's scheme. Trial i draws
 * from the substream (master_seed, i), so the counts are identical for every
 * worker count.
 */
OutageEstimates estimate_outage(const Scenario& s, const McConfig& mc);

enum class ThetaMode {
    exact, // eigen spectrum of drawn channel realizations
    model  // independent groups: Theta = sum_g C_g / E_g, E_g ~ Exp(mean Omega)
};

/// Sorted Theta samples for CDF comparisons. +inf sentinels are excluded.
std::vector<double> sample_theta(const ChannelProfile& profile, const FrameParams& frame,
                                 const McConfig& mc, ThetaMode mode);

/// Two-sample Kolmogorov-Smirnov distance between sorted samples.
double ks_distance(const std::vector<double>& sorted_a, const std::vector<double>& sorted_b);

/// Sup over `grid_points` quantiles of |empirical CDF - model CDF|.
double sup_cdf_gap(const std::vector<double>& sorted_samples, const CfSpec& spec,
                   int grid_points);

} // namespace otfs
