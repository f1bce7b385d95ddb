#include "ridgeforge/risk.hpp"

#include <cmath>
#include <string>

#include "ridgeforge/errors.hpp"

namespace ridgeforge {

namespace {

void check_inputs(const CanonicalForm& c, double sigma2,
                  const Eigen::VectorXd& xi, const char* who) {
    if (xi.size() != c.p())
        throw UsageError(std::string(who) + ": xi has length " +
                         std::to_string(xi.size()) + ", expected " +
                         std::to_string(c.p()));
    if (!(sigma2 >= 0.0))
        throw UsageError(std::string(who) + ": sigma2 must be nonnegative");
}

void check_index(const CanonicalForm& c, Eigen::Index index, const char* who) {
    if (index < 0 || index >= c.p())
        throw UsageError(std::string(who) + ": coordinate " +
                         std::to_string(index + 1) + " out of range with p = " +
                         std::to_string(c.p()));
}

} // namespace

RiskProfile mse_of(const CanonicalForm& c, const ShrinkageSpec& spec,
                   double sigma2, const Eigen::VectorXd& xi) {
    check_inputs(c, sigma2, xi, "mse_of");
    if (spec.p() != c.p())
        throw UsageError("mse_of: spec has p = " + std::to_string(spec.p()) +
                         ", expected " + std::to_string(c.p()));

    const Eigen::ArrayXd lambda = c.eigen.values.array();
    const Eigen::ArrayXd shrunk2 = (lambda + spec.k.array()).square();

    RiskProfile profile;
    profile.spec = spec;
    profile.sigma2 = sigma2;
    profile.variance_part = sigma2 * (lambda / shrunk2).sum();
    profile.bias_part =
        (spec.k.array().square() * xi.array().square() / shrunk2).sum();
    profile.mse = profile.variance_part + profile.bias_part;
    return profile;
}

double mse_ols(const CanonicalForm& c, double sigma2) {
    if (!(sigma2 >= 0.0))
        throw UsageError("mse_ols: sigma2 must be nonnegative");
    return sigma2 * c.eigen.values.array().inverse().sum();
}

SingleMin mse_single_min(const CanonicalForm& c, Eigen::Index index,
                         double sigma2, const Eigen::VectorXd& xi) {
    check_inputs(c, sigma2, xi, "mse_single_min");
    check_index(c, index, "mse_single_min");

    const double xi2 = xi(index) * xi(index);
    if (xi2 == 0.0)
        throw NumericError("mse_single_min: coordinate " +
                           std::to_string(index + 1) +
                           " has xi = 0, the minimum is undefined");

    const double lambda = c.eigen.values(index);

    SingleMin result;
    result.index = index;
    result.k = sigma2 / xi2;
    // Value at the minimizer: the other coordinates contribute the OLS
    // variance, the shrunk one collapses to a closed form in xi_l, lambda_l.
    const double denom = xi2 * lambda + sigma2;
    result.mse = mse_ols(c, sigma2) - sigma2 / lambda +
                 (sigma2 * xi2 * xi2 * lambda + sigma2 * sigma2 * xi2) /
                     (denom * denom);
    result.always_below_ols = xi2 - sigma2 / lambda < 0.0;
    return result;
}

double mse_single_limit(const CanonicalForm& c, Eigen::Index index,
                        double sigma2, const Eigen::VectorXd& xi) {
    check_inputs(c, sigma2, xi, "mse_single_limit");
    check_index(c, index, "mse_single_limit");
    const double xi2 = xi(index) * xi(index);
    return xi2 - sigma2 / c.eigen.values(index) + mse_ols(c, sigma2);
}

std::vector<double> Grid::values() const {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step))
        throw UsageError("grid bounds must be finite");
    if (start < 0.0)
        throw UsageError("grid start must be nonnegative, got " +
                         std::to_string(start));
    if (stop < start)
        throw UsageError("grid stop must be >= start");
    if (step <= 0.0)
        throw UsageError("grid step must be positive, got " +
                         std::to_string(step));

    // Last point never exceeds stop; the relative slack keeps exact
    // multiples like (1 - 0)/1e-5 from losing their final point to rounding.
    const double quotient = (stop - start) / step;
    const double count = std::floor(quotient * (1.0 + 1e-12) + 1e-12);
    if (count > 5e7)
        throw UsageError("grid has too many points");
    const auto n = static_cast<std::size_t>(count);

    std::vector<double> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        out[i] = start + static_cast<double>(i) * step;
    return out;
}

TraceSeries trace_series(const CanonicalForm& c, TraceMode mode,
                         Eigen::Index single_index, const Grid& grid,
                         double sigma2, const Eigen::VectorXd& xi) {
    check_inputs(c, sigma2, xi, "trace_series");
    if (mode == TraceMode::single)
        check_index(c, single_index, "trace_series");

    const std::vector<double> ks = grid.values();
    const Eigen::Index p = c.p();
    const Eigen::ArrayXd lambda = c.eigen.values.array();
    const Eigen::ArrayXd delta = c.delta.array();
    const Eigen::ArrayXd xi2 = xi.array().square();

    TraceSeries series;
    series.mode = mode;
    series.single_index = mode == TraceMode::single ? single_index : -1;
    series.k = ks;
    series.beta.resize(static_cast<Eigen::Index>(ks.size()), p);
    series.norm2.resize(ks.size());
    series.mse.resize(ks.size());
    series.gof.resize(ks.size());

    Eigen::ArrayXd k_vec = Eigen::ArrayXd::Zero(p);
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (mode == TraceMode::uniform)
            k_vec.setConstant(ks[i]);
        else
            k_vec(single_index) = ks[i];

        const Eigen::ArrayXd shrunk = lambda + k_vec;
        const Eigen::ArrayXd rotated = delta / shrunk;
        series.beta.row(static_cast<Eigen::Index>(i)) =
            (c.eigen.vectors * rotated.matrix()).transpose();
        series.norm2[i] = rotated.square().sum();
        series.mse[i] = (sigma2 * lambda / shrunk.square()).sum() +
                        (k_vec.square() * xi2 / shrunk.square()).sum();
        series.gof[i] =
            c.yty > 0.0
                ? (delta.square() * (lambda + 2.0 * k_vec) / shrunk.square()).sum() /
                      c.yty
                : 0.0;
    }
    return series;
}

} // namespace ridgeforge
