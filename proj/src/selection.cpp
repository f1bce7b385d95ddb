#include "ridgeforge/selection.hpp"

#include <cmath>
#include <string>

#include "ridgeforge/errors.hpp"

namespace ridgeforge {

const char* selection_rule_name(SelectionRule rule) {
    switch (rule) {
        case SelectionRule::hkb: return "hkb";
        case SelectionRule::hk: return "hk";
        case SelectionRule::grid_min: return "gridmin";
        case SelectionRule::per_coordinate: return "percoord";
        case SelectionRule::single_min: return "singlemin";
    }
    return "unknown";
}

SelectionResult k_hkb(const OlsFit& ols) {
    const Eigen::Index p = ols.beta.size();
    if (p < 1) throw UsageError("k_hkb: empty coefficient vector");

    SelectionResult result;
    result.rule = SelectionRule::hkb;
    if (ols.sigma2 == 0.0) {
        result.k = 0.0;
        result.spec = ShrinkageSpec::zero(p);
        return result;
    }
    const double btb = ols.beta.squaredNorm();
    if (btb == 0.0)
        throw NumericError("k_hkb: coefficient vector is zero, k is undefined");
    result.k = static_cast<double>(p) * ols.sigma2 / btb;
    result.spec = ShrinkageSpec::uniform(p, result.k);
    return result;
}

SelectionResult k_hk(const CanonicalForm& c, double sigma2,
                     const Eigen::VectorXd& xi) {
    if (xi.size() != c.p())
        throw UsageError("k_hk: xi has length " + std::to_string(xi.size()) +
                         ", expected " + std::to_string(c.p()));

    Eigen::Index arg = 0;
    for (Eigen::Index j = 1; j < xi.size(); ++j)
        if (std::abs(xi(j)) > std::abs(xi(arg))) arg = j;
    const double xi_max2 = xi(arg) * xi(arg);
    if (xi_max2 == 0.0)
        throw NumericError("k_hk: all canonical coefficients are zero");

    SelectionResult result;
    result.rule = SelectionRule::hk;
    result.k = sigma2 / xi_max2;
    result.index = arg;
    result.spec = ShrinkageSpec::uniform(c.p(), result.k);
    return result;
}

SelectionResult k_grid_min(const CanonicalForm& c, double sigma2,
                           const Eigen::VectorXd& xi, const Grid& grid,
                           bool exhaustive) {
    const std::vector<double> ks = grid.values();

    auto mse_at = [&](double k) {
        return mse_of(c, ShrinkageSpec::uniform(c.p(), k), sigma2, xi).mse;
    };

    SelectionResult result;
    result.rule = SelectionRule::grid_min;
    result.grid_step = grid.step;

    std::size_t stop = 0;
    double best = mse_at(ks[0]);
    if (exhaustive) {
        for (std::size_t i = 1; i < ks.size(); ++i) {
            const double value = mse_at(ks[i]);
            if (value < best) {
                best = value;
                stop = i;
            }
        }
        result.hit_grid_end = stop + 1 == ks.size();
    } else {
        // First local rise wins: step until mse_j > mse_{j-1}, then keep
        // the previous point.
        double previous = best;
        bool rose = false;
        for (std::size_t i = 1; i < ks.size(); ++i) {
            const double value = mse_at(ks[i]);
            if (value > previous) {
                stop = i - 1;
                best = previous;
                rose = true;
                break;
            }
            previous = value;
        }
        if (!rose) {
            stop = ks.size() - 1;
            best = previous;
            result.hit_grid_end = true;
        }
    }

    result.k = ks[stop];
    result.grid_index = static_cast<Eigen::Index>(stop);
    result.mse_at_selection = best;
    result.mse_before = stop > 0 ? mse_at(ks[stop - 1]) : best;
    result.mse_after = stop + 1 < ks.size() ? mse_at(ks[stop + 1]) : best;
    result.spec = ShrinkageSpec::uniform(c.p(), result.k);
    return result;
}

SelectionResult per_coordinate(const CanonicalForm& c, double sigma2,
                               const Eigen::VectorXd& xi) {
    if (xi.size() != c.p())
        throw UsageError("per_coordinate: xi has length " +
                         std::to_string(xi.size()) + ", expected " +
                         std::to_string(c.p()));

    std::string zeros;
    for (Eigen::Index j = 0; j < xi.size(); ++j) {
        if (xi(j) == 0.0) {
            if (!zeros.empty()) zeros += ", ";
            zeros += std::to_string(j + 1);
        }
    }
    if (!zeros.empty())
        throw NumericError(
            "per_coordinate: undefined for zero canonical coefficients at "
            "coordinates " + zeros);

    SelectionResult result;
    result.rule = SelectionRule::per_coordinate;
    result.spec =
        ShrinkageSpec::general((sigma2 / xi.array().square()).matrix());
    result.mse_at_selection = mse_of(c, result.spec, sigma2, xi).mse;
    return result;
}

SelectionResult single_min(const CanonicalForm& c, Eigen::Index index,
                           double sigma2, const Eigen::VectorXd& xi) {
    const SingleMin row = mse_single_min(c, index, sigma2, xi);

    SelectionResult result;
    result.rule = SelectionRule::single_min;
    result.index = index;
    result.k = row.k;
    result.mse_at_selection = row.mse;
    result.always_below_ols = row.always_below_ols;
    result.spec = ShrinkageSpec::single(c.p(), index, row.k);
    return result;
}

std::vector<SingleMin> single_min_table(const CanonicalForm& c, double sigma2,
                                        const Eigen::VectorXd& xi) {
    std::vector<SingleMin> rows;
    rows.reserve(static_cast<std::size_t>(c.p()));
    for (Eigen::Index l = 0; l < c.p(); ++l)
        rows.push_back(mse_single_min(c, l, sigma2, xi));
    return rows;
}

} // namespace ridgeforge
