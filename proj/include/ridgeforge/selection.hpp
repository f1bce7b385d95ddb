#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ridgeforge/dataset.hpp"
#include "ridgeforge/ridge.hpp"
#include "ridgeforge/risk.hpp"

namespace ridgeforge {

enum class SelectionRule { hkb, hk, grid_min, per_coordinate, single_min };

const char* selection_rule_name(SelectionRule rule);

struct SelectionResult {
    SelectionRule rule = SelectionRule::hkb;
    ShrinkageSpec spec;          // ready to hand to ridge_fit

    // Rule-specific diagnostics; unset fields keep their defaults.
    double k = 0.0;              // headline value for uniform and single rules
    Eigen::Index index = -1;     // 0-based coordinate for single_min
    double mse_at_selection = 0.0;
    bool always_below_ols = false;  // single_min flag
    // Grid walk diagnostics: the grid index stopped at, its neighbors' MSE
    // values, and whether the walk reached the end without an interior rise.
    Eigen::Index grid_index = -1;
    double grid_step = 0.0;
    double mse_before = 0.0;
    double mse_after = 0.0;
    bool hit_grid_end = false;
};

// k = p sigma2 / beta'beta from the unshrunk fit.
SelectionResult k_hkb(const OlsFit& ols);

// k = sigma2 / xi_max^2 with xi_max the largest-magnitude canonical
// coefficient (ties broken by lowest index).
SelectionResult k_hk(const CanonicalForm& c, double sigma2,
                     const Eigen::VectorXd& xi);

// Walks the grid left to right and stops at the first MSE rise, returning
// the preceding point. exhaustive = true scans the whole grid for the true
// argmin instead (verification mode).
SelectionResult k_grid_min(const CanonicalForm& c, double sigma2,
                           const Eigen::VectorXd& xi, const Grid& grid,
                           bool exhaustive = false);

// k_i = sigma2 / xi_i^2 for every coordinate.
SelectionResult per_coordinate(const CanonicalForm& c, double sigma2,
                               const Eigen::VectorXd& xi);

// Single(l, sigma2/xi_l^2) via the exact single-coordinate minimizer.
SelectionResult single_min(const CanonicalForm& c, Eigen::Index index,
                           double sigma2, const Eigen::VectorXd& xi);

// One SingleMin row per coordinate: the minimizer, its MSE, and the
// always-below flag, in coordinate order.
std::vector<SingleMin> single_min_table(const CanonicalForm& c, double sigma2,
                                        const Eigen::VectorXd& xi);

} // namespace ridgeforge
