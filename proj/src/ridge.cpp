#include "ridgeforge/ridge.hpp"

#include <cmath>
#include <string>

#include "ridgeforge/errors.hpp"
#include "ridgeforge/report.hpp"

namespace ridgeforge {

namespace {

void check_nonnegative(const Eigen::VectorXd& k) {
    for (Eigen::Index j = 0; j < k.size(); ++j) {
        if (!std::isfinite(k(j)) || k(j) < 0.0)
            throw UsageError("shrinkage values must be finite and nonnegative, got " +
                             std::to_string(k(j)) + " at position " +
                             std::to_string(j + 1));
    }
}

} // namespace

ShrinkageSpec ShrinkageSpec::zero(Eigen::Index p) {
    if (p < 1) throw UsageError("shrinkage spec needs p >= 1");
    ShrinkageSpec s;
    s.kind = Kind::zero;
    s.k = Eigen::VectorXd::Zero(p);
    return s;
}

ShrinkageSpec ShrinkageSpec::uniform(Eigen::Index p, double value) {
    if (p < 1) throw UsageError("shrinkage spec needs p >= 1");
    ShrinkageSpec s;
    s.kind = Kind::uniform;
    s.k = Eigen::VectorXd::Constant(p, value);
    check_nonnegative(s.k);
    return s;
}

ShrinkageSpec ShrinkageSpec::single(Eigen::Index p, Eigen::Index index, double value) {
    if (p < 1) throw UsageError("shrinkage spec needs p >= 1");
    if (index < 0 || index >= p)
        throw UsageError("single-coordinate index out of range: " +
                         std::to_string(index + 1) + " with p = " + std::to_string(p));
    ShrinkageSpec s;
    s.kind = Kind::single;
    s.k = Eigen::VectorXd::Zero(p);
    s.k(index) = value;
    s.single_index = index;
    check_nonnegative(s.k);
    return s;
}

ShrinkageSpec ShrinkageSpec::general(const Eigen::VectorXd& values) {
    if (values.size() < 1) throw UsageError("shrinkage spec needs p >= 1");
    ShrinkageSpec s;
    s.kind = Kind::general;
    s.k = values;
    check_nonnegative(s.k);
    return s;
}

const char* shrinkage_kind_name(ShrinkageSpec::Kind kind) {
    switch (kind) {
        case ShrinkageSpec::Kind::zero: return "zero";
        case ShrinkageSpec::Kind::uniform: return "uniform";
        case ShrinkageSpec::Kind::single: return "single";
        case ShrinkageSpec::Kind::general: return "general";
    }
    return "unknown";
}

std::string describe(const ShrinkageSpec& spec) {
    switch (spec.kind) {
        case ShrinkageSpec::Kind::zero:
            return "zero";
        case ShrinkageSpec::Kind::uniform:
            return "uniform(k=" + format_significant(spec.k(0)) + ")";
        case ShrinkageSpec::Kind::single:
            return "single(" + std::to_string(spec.single_index + 1) +
                   ", k=" + format_significant(spec.k(spec.single_index)) + ")";
        case ShrinkageSpec::Kind::general:
            return "general(p=" + std::to_string(spec.p()) + ")";
    }
    return "unknown";
}

CanonicalForm canonicalize(const Dataset& d) {
    if (d.n() <= d.p())
        throw UsageError("canonicalize: need n > p, got n = " + std::to_string(d.n()) +
                         ", p = " + std::to_string(d.p()));

    CanonicalForm c;
    c.eigen = eigen_decompose(d.x.transpose() * d.x);
    require_full_rank(c.eigen);
    c.z = d.x * c.eigen.vectors;
    c.alpha = d.x.transpose() * d.y;
    c.delta = c.eigen.vectors.transpose() * c.alpha;
    c.xi_hat = c.delta.array() / c.eigen.values.array();
    c.yty = d.y.squaredNorm();
    c.n = d.n();
    return c;
}

namespace {

void check_spec_size(const CanonicalForm& c, const ShrinkageSpec& spec) {
    if (spec.p() != c.p())
        throw UsageError("shrinkage spec has p = " + std::to_string(spec.p()) +
                         " but the model has p = " + std::to_string(c.p()));
}

} // namespace

RidgeFit ridge_fit(const CanonicalForm& c, const Dataset& d,
                   const ShrinkageSpec& spec, double sigma2) {
    check_spec_size(c, spec);
    if (d.p() != c.p() || d.n() != c.n)
        throw UsageError("ridge_fit: dataset does not match the canonical form");
    if (!(sigma2 > 0.0))
        throw UsageError("ridge_fit: sigma2 must be positive");

    const Eigen::ArrayXd lambda = c.eigen.values.array();
    const Eigen::ArrayXd shrunk = lambda + spec.k.array();
    const Eigen::VectorXd rotated = (c.delta.array() / shrunk).matrix();

    RidgeFit fit;
    fit.spec = spec;
    fit.beta = c.eigen.vectors * rotated;
    fit.fitted = c.z * rotated;
    fit.residuals = d.y - fit.fitted;
    fit.norm2 = (c.delta.array() / shrunk).square().sum();
    const Eigen::VectorXd psi = (lambda / shrunk.square()).matrix();
    fit.varcov = sigma2 * (c.eigen.vectors * psi.asDiagonal() *
                           c.eigen.vectors.transpose());
    const Eigen::VectorXd omega_lambda = (lambda / shrunk).matrix();
    fit.w_k = c.eigen.vectors * omega_lambda.asDiagonal() *
              c.eigen.vectors.transpose();
    fit.rss = fit.residuals.squaredNorm();
    fit.gof = c.yty > 0.0 ? 1.0 - fit.rss / c.yty : 0.0;
    return fit;
}

AugmentedFit augmented_fit(const CanonicalForm& c, const Dataset& d,
                           const ShrinkageSpec& spec, double sigma2) {
    check_spec_size(c, spec);
    if (!(sigma2 > 0.0))
        throw UsageError("augmented_fit: sigma2 must be positive");

    const Eigen::Index n = d.n();
    const Eigen::Index p = d.p();

    // Stack K^{1/2} Gamma' under X and p zeros under Y; plain OLS on the
    // stacked system then solves (X'X + Gamma K Gamma') beta = X'Y.
    Eigen::MatrixXd x_aug(n + p, p);
    x_aug.topRows(n) = d.x;
    x_aug.bottomRows(p) = spec.k.array().sqrt().matrix().asDiagonal() *
                          c.eigen.vectors.transpose();
    Eigen::VectorXd y_aug = Eigen::VectorXd::Zero(n + p);
    y_aug.head(n) = d.y;

    const Eigen::MatrixXd gram_aug = x_aug.transpose() * x_aug;

    AugmentedFit fit;
    fit.beta = solve_spd(gram_aug, x_aug.transpose() * y_aug);
    fit.varcov = sigma2 * inverse_spd(gram_aug);
    const double rss_aug = (y_aug - x_aug * fit.beta).squaredNorm();
    const double yty = d.y.squaredNorm();
    fit.gof = yty > 0.0 ? 1.0 - rss_aug / yty : 0.0;
    return fit;
}

Eigen::VectorXd shrink_limit(const CanonicalForm& c, Eigen::Index index) {
    if (index < 0 || index >= c.p())
        throw UsageError("shrink_limit: coordinate " + std::to_string(index + 1) +
                         " out of range with p = " + std::to_string(c.p()));
    const Eigen::VectorXd beta_ols = c.eigen.vectors * c.xi_hat;
    return beta_ols - c.eigen.vectors.col(index) * c.xi_hat(index);
}

} // namespace ridgeforge
