#pragma once

#include <utility>

#include <Eigen/Dense>

#include "ridgeforge/ridge.hpp"

namespace ridgeforge {

// Goodness of fit generalized to shrinkage: the explained term carries a 2K
// correction so that total = explained + residual still holds exactly.
struct GofReport {
    double tss = 0.0;           // Y'Y
    double ess = 0.0;           // beta'(X'X + 2 Gamma K Gamma')beta
    double rss = 0.0;           // residual sum of squares
    double value = 0.0;         // 1 - rss/tss = ess/tss
    double augmented_value = 0.0;  // penalty block weighted K instead of 2K
    Eigen::VectorXd ess_weights;   // spectral weights (lambda+2k)/(lambda+k)^2
    bool raw_frame = false;     // set when the data was never centered; the
                                // value is then not comparable to a classical R^2
};

GofReport gof_of(const CanonicalForm& c, const Dataset& d, const RidgeFit& fit);

// Closed-form value from the canonical quantities alone, without a fit:
// sum delta_j^2 (lambda_j + 2 k_j)/(lambda_j + k_j)^2 / Y'Y.
double gof_value(const CanonicalForm& c, const ShrinkageSpec& spec);

// Limit as the shrinkage on one coordinate grows without bound:
// gof(unshrunk) - delta_l^2 / (lambda_l Y'Y).
double gof_limit_single(const CanonicalForm& c, Eigen::Index index);

// Fits the same spec on Y and on (Y - a)/b and returns both goodness-of-fit
// values: scale changes (b) leave it alone, origin changes (a) do not.
std::pair<double, double> gof_under_transform(const Dataset& d, double a,
                                              double b,
                                              const ShrinkageSpec& spec);

} // namespace ridgeforge
