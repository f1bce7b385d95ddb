#pragma once

#include <Eigen/Dense>

#include "ridgeforge/dataset.hpp"
#include "ridgeforge/linalg.hpp"

namespace ridgeforge {

// Per-eigendirection shrinkage K = diag(k_1..k_p), applied in the eigenbasis
// of X'X. The variant tag records how the spec was built; the k vector is
// always materialized in full.
struct ShrinkageSpec {
    enum class Kind { zero, uniform, single, general };

    Kind kind = Kind::zero;
    Eigen::VectorXd k;
    Eigen::Index single_index = -1;  // 0-based, set for Kind::single

    static ShrinkageSpec zero(Eigen::Index p);
    static ShrinkageSpec uniform(Eigen::Index p, double value);
    static ShrinkageSpec single(Eigen::Index p, Eigen::Index index, double value);
    static ShrinkageSpec general(const Eigen::VectorXd& values);

    Eigen::Index p() const { return k.size(); }
};

const char* shrinkage_kind_name(ShrinkageSpec::Kind kind);

// One-line description such as "uniform(k=0.007316662)"; used in reports.
std::string describe(const ShrinkageSpec& spec);

// The rotated model Y = Z xi + u with Z = X Gamma, in which X'X becomes
// diagonal. One decomposition serves every shrinkage evaluation.
struct CanonicalForm {
    EigenSystem eigen;       // of X'X; eigen.vectors is Gamma
    Eigen::MatrixXd z;       // X Gamma
    Eigen::VectorXd alpha;   // X'Y
    Eigen::VectorXd delta;   // Gamma' alpha
    Eigen::VectorXd xi_hat;  // delta / lambda, the rotated OLS coefficients
    double yty = 0.0;        // Y'Y in the fitted frame
    Eigen::Index n = 0;

    Eigen::Index p() const { return delta.size(); }
};

CanonicalForm canonicalize(const Dataset& d);

struct RidgeFit {
    ShrinkageSpec spec;
    Eigen::VectorXd beta;       // Gamma Omega delta with Omega = diag(1/(lambda+k))
    Eigen::VectorXd fitted;
    Eigen::VectorXd residuals;
    double norm2 = 0.0;         // squared norm beta'beta = sum delta^2/(lambda+k)^2
    Eigen::MatrixXd varcov;     // sigma2 Gamma Psi Gamma', Psi = diag(lambda/(lambda+k)^2)
    Eigen::MatrixXd w_k;        // shrink operator Gamma Omega Lambda Gamma'
    double rss = 0.0;
    double gof = 0.0;           // 1 - rss / y'y
};

RidgeFit ridge_fit(const CanonicalForm& c, const Dataset& d,
                   const ShrinkageSpec& spec, double sigma2);

struct AugmentedFit {
    Eigen::VectorXd beta;      // equals the ridge_fit coefficients
    Eigen::MatrixXd varcov;    // sigma2 (X'X + Gamma K Gamma')^-1; differs from RidgeFit::varcov
    double gof = 0.0;          // computed from the stacked residuals, so the
                               // penalty block enters with weight K, not 2K
};

// OLS on the stacked system (Y; 0), (X; K^{1/2} Gamma'), solved by Cholesky
// as an independent route to the same coefficients.
AugmentedFit augmented_fit(const CanonicalForm& c, const Dataset& d,
                           const ShrinkageSpec& spec, double sigma2);

// Coefficient limit as the shrinkage on one direction grows without bound:
// component i tends to beta_ols_i - gamma_il delta_l / lambda_l.
Eigen::VectorXd shrink_limit(const CanonicalForm& c, Eigen::Index index);

} // namespace ridgeforge
