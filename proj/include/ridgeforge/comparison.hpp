#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ridgeforge/ridge.hpp"

namespace ridgeforge {

// Outcome of a matrix-MSE dominance test between two shrinkage specs.
//
//   dominates       the challenger's sampling variability is smaller in
//                   every direction (the difference matrix is PSD with at
//                   least one strictly positive entry) with no bias caveat
//                   evaluated;
//   condition_holds the strict-PD case where true coefficients were supplied
//                   and the bias quadratic form stayed below sigma2;
//   not_comparable  the difference matrix is indefinite (or zero), or the
//                   bias condition failed; the recorded values say which.
enum class DominanceTag { dominates, condition_holds, not_comparable };

const char* dominance_tag_name(DominanceTag tag);

struct DominanceVerdict {
    ShrinkageSpec challenger;
    ShrinkageSpec incumbent;
    // Diagonal of the variance-difference matrix in the shared eigenbasis:
    // entry i = (kc_i - ki_i)/((lambda_i + ki_i)(lambda_i + kc_i)).
    Eigen::VectorXd diagonal;
    bool strictly_pd = false;   // all entries > 0
    bool psd = false;           // all entries >= 0 with at least one > 0
    bool condition_evaluated = false;
    double condition_value = 0.0;  // bias quadratic form, when evaluated
    double sigma2 = 0.0;           // threshold it was compared against
    DominanceTag tag = DominanceTag::not_comparable;
};

// Closed-form diagonal of the variance-difference matrix between the
// challenger's and the incumbent's shrinkage.
Eigen::VectorXd comparison_diagonal(const CanonicalForm& c,
                                    const ShrinkageSpec& challenger,
                                    const ShrinkageSpec& incumbent);

// Structural test only: positive definiteness of the difference matrix.
// Entries within 1e-12 of zero (relative to the largest magnitude) count as
// zero, the boundary case where challenger and incumbent shrink a direction
// equally.
DominanceVerdict compare_specs(const CanonicalForm& c,
                               const ShrinkageSpec& challenger,
                               const ShrinkageSpec& incumbent);

// Full test: additionally evaluates the bias quadratic form
// beta' (C1 X - I)' S^-1 (C1 X - I) beta against sigma2, which requires the
// true coefficients. Only meaningful when the structure is strictly PD.
DominanceVerdict compare_specs(const CanonicalForm& c,
                               const ShrinkageSpec& challenger,
                               const ShrinkageSpec& incumbent,
                               const Eigen::VectorXd& beta_true, double sigma2);

// The standard comparison suite for a fitted model: the per-coordinate spec
// against each uniform candidate, both against the unshrunk estimator, and
// each uniform candidate against the best single-coordinate spec. Labels
// name the pairing.
std::vector<std::pair<std::string, DominanceVerdict>> corollary_checks(
    const CanonicalForm& c, const ShrinkageSpec& percoord,
    const ShrinkageSpec& single_best,
    const std::vector<std::pair<std::string, double>>& uniform_candidates);

} // namespace ridgeforge
