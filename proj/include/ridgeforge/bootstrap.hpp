#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ridgeforge/dataset.hpp"
#include "ridgeforge/ridge.hpp"

namespace ridgeforge {

struct BootstrapConfig {
    long replicates = 10000;   // must be >= 100
    double level = 0.95;       // confidence level in (0, 1)
    std::uint64_t seed = 0;
    int threads = 0;           // 0 = RIDGEFORGE_THREADS env, else hardware
    double max_discard_fraction = 0.05;
};

struct BootstrapSummary {
    Eigen::VectorXd point;       // coefficients on the original data
    Eigen::VectorXd lower;       // percentile bounds per coefficient
    Eigen::VectorXd upper;
    double gof_point = 0.0;
    double gof_lower = 0.0;
    double gof_upper = 0.0;
    std::vector<bool> significant;  // interval excludes zero
    long replicates_used = 0;
    long replicates_discarded = 0;
    double level = 0.95;
    std::uint64_t seed = 0;
};

// Pairs resampling: each replicate draws n (y, x-row) pairs with
// replacement, refits the estimator under the SAME spec, and records the
// coefficients and goodness of fit. Intervals are percentile intervals.
// Deterministic given the seed, and identical whether run on one thread or
// many. Replicates whose resampled Gram matrix is rank deficient in a
// direction with zero shrinkage are discarded; more than
// max_discard_fraction of them fails the run.
BootstrapSummary bootstrap_intervals(const Dataset& d, const ShrinkageSpec& spec,
                                     const BootstrapConfig& cfg);

// Linear order-statistic interpolation at position q (m - 1) (zero-based)
// of the sorted values.
double quantile(std::vector<double> values, double q);

// Thread count to use: requested if > 0, else the RIDGEFORGE_THREADS
// environment variable, else the hardware concurrency.
int resolved_threads(int requested);

} // namespace ridgeforge
