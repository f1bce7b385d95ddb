#include "ridgeforge/gof.hpp"

#include <string>

#include "ridgeforge/errors.hpp"

namespace ridgeforge {

GofReport gof_of(const CanonicalForm& c, const Dataset& d, const RidgeFit& fit) {
    if (fit.spec.p() != c.p())
        throw UsageError("gof_of: fit and canonical form disagree on p");
    if (c.yty <= 0.0)
        throw NumericError("gof_of: Y'Y must be positive");

    const Eigen::ArrayXd lambda = c.eigen.values.array();
    const Eigen::ArrayXd k = fit.spec.k.array();
    const Eigen::ArrayXd shrunk2 = (lambda + k).square();

    GofReport report;
    report.tss = c.yty;
    report.rss = fit.rss;
    report.ess_weights = ((lambda + 2.0 * k) / shrunk2).matrix();
    // Explained term with the 2K correction; equals tss - rss exactly in
    // exact arithmetic, kept as the independent matrix form for testing.
    const Eigen::VectorXd gram_k_beta =
        c.eigen.vectors *
        (k * (c.eigen.vectors.transpose() * fit.beta).array()).matrix();
    report.ess = fit.fitted.squaredNorm() + 2.0 * fit.beta.dot(gram_k_beta);
    report.value = 1.0 - report.rss / report.tss;
    report.augmented_value =
        1.0 - (report.rss + fit.beta.dot(gram_k_beta)) / report.tss;
    report.raw_frame = d.transform.mode == TransformMode::raw;
    return report;
}

double gof_value(const CanonicalForm& c, const ShrinkageSpec& spec) {
    if (spec.p() != c.p())
        throw UsageError("gof_value: spec has p = " + std::to_string(spec.p()) +
                         ", expected " + std::to_string(c.p()));
    if (c.yty <= 0.0)
        throw NumericError("gof_value: Y'Y must be positive");
    const Eigen::ArrayXd lambda = c.eigen.values.array();
    const Eigen::ArrayXd k = spec.k.array();
    return (c.delta.array().square() * (lambda + 2.0 * k) /
            (lambda + k).square())
               .sum() /
           c.yty;
}

double gof_limit_single(const CanonicalForm& c, Eigen::Index index) {
    if (index < 0 || index >= c.p())
        throw UsageError("gof_limit_single: coordinate " +
                         std::to_string(index + 1) + " out of range with p = " +
                         std::to_string(c.p()));
    if (c.yty <= 0.0)
        throw NumericError("gof_limit_single: Y'Y must be positive");
    const double unshrunk = gof_value(c, ShrinkageSpec::zero(c.p()));
    const double delta = c.delta(index);
    return unshrunk - delta * delta / (c.eigen.values(index) * c.yty);
}

std::pair<double, double> gof_under_transform(const Dataset& d, double a,
                                              double b,
                                              const ShrinkageSpec& spec) {
    if (b == 0.0)
        throw UsageError("gof_under_transform: scale b must be nonzero");

    Dataset shifted = d;
    shifted.y = (d.y.array() - a) / b;

    const double original = gof_value(canonicalize(d), spec);
    const double transformed = gof_value(canonicalize(shifted), spec);
    return {original, transformed};
}

} // namespace ridgeforge
