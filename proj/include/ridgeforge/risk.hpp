#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ridgeforge/ridge.hpp"

namespace ridgeforge {

// Scalar mean squared error of the shrunk estimator, split into its variance
// and squared-bias parts. xi holds the canonical coefficients treated as
// truth (plug in xi_hat, or supply known values in simulations).
struct RiskProfile {
    ShrinkageSpec spec;
    double variance_part = 0.0;  // sigma2 sum lambda_j/(lambda_j+k_j)^2
    double bias_part = 0.0;      // sum k_j^2 xi_j^2/(lambda_j+k_j)^2
    double mse = 0.0;            // variance_part + bias_part
    double sigma2 = 0.0;
};

RiskProfile mse_of(const CanonicalForm& c, const ShrinkageSpec& spec,
                   double sigma2, const Eigen::VectorXd& xi);

// MSE of the unshrunk estimator, sigma2 sum 1/lambda_j.
double mse_ols(const CanonicalForm& c, double sigma2);

// Shrinking one coordinate while the rest stay at zero: the exact minimizer
// and what happens at the large-k end.
struct SingleMin {
    Eigen::Index index = -1;       // 0-based coordinate
    double k = 0.0;                // sigma2 / xi_l^2
    double mse = 0.0;              // value at the minimizer
    bool always_below_ols = false; // true when xi_l^2 - sigma2/lambda_l < 0,
                                   // i.e. the whole curve stays under the OLS MSE
};

SingleMin mse_single_min(const CanonicalForm& c, Eigen::Index index,
                         double sigma2, const Eigen::VectorXd& xi);

// Limit of the single-coordinate MSE as k_l grows without bound:
// xi_l^2 - sigma2/lambda_l + MSE(OLS).
double mse_single_limit(const CanonicalForm& c, Eigen::Index index,
                        double sigma2, const Eigen::VectorXd& xi);

// Evenly spaced evaluation grid over [start, stop].
struct Grid {
    double start = 0.0;
    double stop = 1.0;
    double step = 1e-5;

    std::vector<double> values() const;  // validates and materializes
};

enum class TraceMode { uniform, single };

// Per-grid-point summaries of the fit: coefficients, squared norm, MSE and
// goodness of fit, in grid order. Everything comes from the closed forms in
// canonical coordinates, so a 1e5-point grid is cheap.
struct TraceSeries {
    TraceMode mode = TraceMode::uniform;
    Eigen::Index single_index = -1;  // 0-based, TraceMode::single only
    std::vector<double> k;
    Eigen::MatrixXd beta;            // row per grid point, column per coefficient
    std::vector<double> norm2;
    std::vector<double> mse;
    std::vector<double> gof;
};

TraceSeries trace_series(const CanonicalForm& c, TraceMode mode,
                         Eigen::Index single_index, const Grid& grid,
                         double sigma2, const Eigen::VectorXd& xi);

} // namespace ridgeforge
