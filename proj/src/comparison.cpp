#include "ridgeforge/comparison.hpp"

#include <cmath>
#include <string>

#include "ridgeforge/errors.hpp"

namespace ridgeforge {

const char* dominance_tag_name(DominanceTag tag) {
    switch (tag) {
        case DominanceTag::dominates: return "dominates";
        case DominanceTag::condition_holds: return "condition_holds";
        case DominanceTag::not_comparable: return "not_comparable";
    }
    return "unknown";
}

Eigen::VectorXd comparison_diagonal(const CanonicalForm& c,
                                    const ShrinkageSpec& challenger,
                                    const ShrinkageSpec& incumbent) {
    if (challenger.p() != c.p() || incumbent.p() != c.p())
        throw UsageError("comparison_diagonal: spec dimensions must match the model");
    const Eigen::ArrayXd lambda = c.eigen.values.array();
    const Eigen::ArrayXd kc = challenger.k.array();
    const Eigen::ArrayXd ki = incumbent.k.array();
    return ((kc - ki) / ((lambda + ki) * (lambda + kc))).matrix();
}

namespace {

DominanceVerdict structural_verdict(const CanonicalForm& c,
                                    const ShrinkageSpec& challenger,
                                    const ShrinkageSpec& incumbent) {
    DominanceVerdict verdict;
    verdict.challenger = challenger;
    verdict.incumbent = incumbent;
    verdict.diagonal = comparison_diagonal(c, challenger, incumbent);

    const double scale = verdict.diagonal.cwiseAbs().maxCoeff();
    const double tol = 1e-12 * scale;
    bool any_negative = false;
    bool any_positive = false;
    bool all_positive = scale > 0.0;
    for (Eigen::Index i = 0; i < verdict.diagonal.size(); ++i) {
        const double entry = verdict.diagonal(i);
        if (entry < -tol) any_negative = true;
        if (entry > tol) any_positive = true;
        else all_positive = false;
    }
    verdict.strictly_pd = all_positive;
    verdict.psd = !any_negative && any_positive;
    verdict.tag =
        verdict.psd ? DominanceTag::dominates : DominanceTag::not_comparable;
    return verdict;
}

} // namespace

DominanceVerdict compare_specs(const CanonicalForm& c,
                               const ShrinkageSpec& challenger,
                               const ShrinkageSpec& incumbent) {
    return structural_verdict(c, challenger, incumbent);
}

DominanceVerdict compare_specs(const CanonicalForm& c,
                               const ShrinkageSpec& challenger,
                               const ShrinkageSpec& incumbent,
                               const Eigen::VectorXd& beta_true, double sigma2) {
    if (beta_true.size() != c.p())
        throw UsageError("compare_specs: beta has length " +
                         std::to_string(beta_true.size()) + ", expected " +
                         std::to_string(c.p()));
    if (!(sigma2 > 0.0))
        throw UsageError("compare_specs: sigma2 must be positive");

    DominanceVerdict verdict = structural_verdict(c, challenger, incumbent);
    verdict.sigma2 = sigma2;
    if (!verdict.strictly_pd) {
        // The difference matrix is singular or indefinite; the bias
        // quadratic form is not defined, so no dominance call is made.
        verdict.tag = DominanceTag::not_comparable;
        return verdict;
    }

    // In the shared eigenbasis the quadratic form collapses: the shrink
    // residual (C1 X - I) beta has rotated entries -kc_i xi_i/(lambda_i+kc_i),
    // and S = C2 C2' - C1 C1' is diagonal with entries
    // lambda_i (1/(lambda_i+ki_i)^2 - 1/(lambda_i+kc_i)^2).
    const Eigen::ArrayXd lambda = c.eigen.values.array();
    const Eigen::ArrayXd kc = verdict.challenger.k.array();
    const Eigen::ArrayXd ki = verdict.incumbent.k.array();
    const Eigen::ArrayXd s = lambda * ((lambda + ki).square().inverse() -
                                       (lambda + kc).square().inverse());
    const Eigen::ArrayXd xi_true =
        (c.eigen.vectors.transpose() * beta_true).array();
    verdict.condition_value =
        (xi_true.square() * (kc / (lambda + kc)).square() / s).sum();
    verdict.condition_evaluated = true;
    verdict.tag = verdict.condition_value < sigma2
                      ? DominanceTag::condition_holds
                      : DominanceTag::not_comparable;
    return verdict;
}

std::vector<std::pair<std::string, DominanceVerdict>> corollary_checks(
    const CanonicalForm& c, const ShrinkageSpec& percoord,
    const ShrinkageSpec& single_best,
    const std::vector<std::pair<std::string, double>>& uniform_candidates) {
    const ShrinkageSpec ols = ShrinkageSpec::zero(c.p());

    std::vector<std::pair<std::string, DominanceVerdict>> checks;
    for (const auto& [label, k] : uniform_candidates) {
        const ShrinkageSpec uniform = ShrinkageSpec::uniform(c.p(), k);
        checks.emplace_back("percoord vs " + label,
                            compare_specs(c, percoord, uniform));
    }
    checks.emplace_back("percoord vs ols", compare_specs(c, percoord, ols));
    checks.emplace_back("single vs ols", compare_specs(c, single_best, ols));
    for (const auto& [label, k] : uniform_candidates) {
        const ShrinkageSpec uniform = ShrinkageSpec::uniform(c.p(), k);
        checks.emplace_back(label + " vs ols", compare_specs(c, uniform, ols));
    }
    for (const auto& [label, k] : uniform_candidates) {
        const ShrinkageSpec uniform = ShrinkageSpec::uniform(c.p(), k);
        checks.emplace_back(label + " vs single",
                            compare_specs(c, uniform, single_best));
    }
    return checks;
}

} // namespace ridgeforge
