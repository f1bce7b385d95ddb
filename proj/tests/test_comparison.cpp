#include "doctest.h"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "ridgeforge/comparison.hpp"
#include "ridgeforge/errors.hpp"
#include "ridgeforge/linalg.hpp"
#include "ridgeforge/ridge.hpp"
#include "ridgeforge/rng.hpp"

using namespace ridgeforge;

namespace {

Dataset random_dataset(int n, int p, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    Dataset d;
    d.x.resize(n, p);
    d.y.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) d.x(i, j) = 2.0 * rng.uniform() - 1.0;
        d.y(i) = 2.0 * rng.uniform() - 1.0;
    }
    d.column_names.resize(p);
    return d;
}

// The variance-difference matrix assembled from explicit inverses, with no
// shared-eigenbasis shortcut.
Eigen::MatrixXd assemble_difference(const Dataset& d, const CanonicalForm& c,
                                    const ShrinkageSpec& challenger,
                                    const ShrinkageSpec& incumbent) {
    const Eigen::MatrixXd gram = d.x.transpose() * d.x;
    const Eigen::MatrixXd gamma = c.eigen.vectors;
    const Eigen::MatrixXd pc =
        gamma * challenger.k.asDiagonal() * gamma.transpose();
    const Eigen::MatrixXd pi =
        gamma * incumbent.k.asDiagonal() * gamma.transpose();
    return (gram + pi).inverse() - (gram + pc).inverse();
}

}  // namespace

TEST_CASE("closed-form diagonal equals the eigenvalues of the assembled matrix") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        CAPTURE(seed);
        const int p = 2 + static_cast<int>(seed % 5);
        const Dataset d = random_dataset(20 + p, p, seed);
        const CanonicalForm c = canonicalize(d);

        Xoshiro256 rng(seed + 700);
        Eigen::VectorXd kc(p), ki(p);
        for (int j = 0; j < p; ++j) {
            kc(j) = rng.uniform();
            ki(j) = rng.uniform();
        }
        const ShrinkageSpec chal = ShrinkageSpec::general(kc);
        const ShrinkageSpec inc = ShrinkageSpec::general(ki);

        const Eigen::VectorXd diag = comparison_diagonal(c, chal, inc);
        const Eigen::MatrixXd a = assemble_difference(d, c, chal, inc);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
        REQUIRE(es.info() == Eigen::Success);

        // Same multiset of values once both are sorted.
        Eigen::VectorXd sorted_diag = diag;
        std::sort(sorted_diag.data(), sorted_diag.data() + p);
        const Eigen::VectorXd sorted_eig = es.eigenvalues();
        const double scale = sorted_eig.cwiseAbs().maxCoeff();
        for (int j = 0; j < p; ++j) {
            CAPTURE(j);
            CHECK(std::abs(sorted_diag(j) - sorted_eig(j)) <=
                  1e-10 * (1.0 + scale));
        }

        // Sign structure agrees with the PD verdict.
        const DominanceVerdict v = compare_specs(c, chal, inc);
        const bool eig_pd = sorted_eig.minCoeff() > 1e-12 * scale;
        CHECK(v.strictly_pd == eig_pd);
    }
}

TEST_CASE("positive difference matrices pass random quadratic-form probes") {
    const Dataset d = random_dataset(25, 4, 5);
    const CanonicalForm c = canonicalize(d);
    const ShrinkageSpec chal = ShrinkageSpec::uniform(4, 0.8);
    const ShrinkageSpec inc = ShrinkageSpec::uniform(4, 0.1);

    const DominanceVerdict v = compare_specs(c, chal, inc);
    REQUIRE(v.strictly_pd);

    const Eigen::MatrixXd s = assemble_difference(d, c, chal, inc);
    Xoshiro256 rng(909);
    for (int probe = 0; probe < 100; ++probe) {
        Eigen::VectorXd a(4);
        for (int j = 0; j < 4; ++j) a(j) = 2.0 * rng.uniform() - 1.0;
        if (a.norm() < 1e-8) continue;
        CHECK(quad_form(s, a) > 0.0);
    }
}

TEST_CASE("enlarging the challenger weakly raises every diagonal entry") {
    const Dataset d = random_dataset(25, 4, 13);
    const CanonicalForm c = canonicalize(d);
    Xoshiro256 rng(14);
    Eigen::VectorXd kc(4);
    for (int j = 0; j < 4; ++j) kc(j) = rng.uniform();
    const ShrinkageSpec inc = ShrinkageSpec::uniform(4, 0.2);

    const Eigen::VectorXd base =
        comparison_diagonal(c, ShrinkageSpec::general(kc), inc);
    const Eigen::VectorXd grown = comparison_diagonal(
        c, ShrinkageSpec::general(kc.array() + 0.5), inc);
    for (int j = 0; j < 4; ++j) {
        CAPTURE(j);
        CHECK(grown(j) >= base(j));
    }
}

TEST_CASE("identical specs are not comparable") {
    const Dataset d = random_dataset(20, 3, 21);
    const CanonicalForm c = canonicalize(d);
    const DominanceVerdict v = compare_specs(c, ShrinkageSpec::zero(3),
                                             ShrinkageSpec::zero(3));
    CHECK(v.tag == DominanceTag::not_comparable);
    CHECK_FALSE(v.psd);
    CHECK(v.diagonal.isZero());
}

TEST_CASE("one equal coordinate gives the semidefinite boundary") {
    const Dataset d = random_dataset(22, 3, 33);
    const CanonicalForm c = canonicalize(d);
    Eigen::VectorXd kc(3);
    kc << 0.5, 0.3, 0.1;  // last coordinate ties the incumbent exactly
    const DominanceVerdict v = compare_specs(c, ShrinkageSpec::general(kc),
                                             ShrinkageSpec::uniform(3, 0.1));
    CHECK_FALSE(v.strictly_pd);
    CHECK(v.psd);
    CHECK(v.tag == DominanceTag::dominates);
}

TEST_CASE("a smaller challenger coordinate breaks comparability") {
    const Dataset d = random_dataset(22, 3, 35);
    const CanonicalForm c = canonicalize(d);
    Eigen::VectorXd kc(3);
    kc << 0.5, 0.05, 0.3;
    const DominanceVerdict v = compare_specs(c, ShrinkageSpec::general(kc),
                                             ShrinkageSpec::uniform(3, 0.1));
    CHECK_FALSE(v.psd);
    CHECK(v.tag == DominanceTag::not_comparable);
}

TEST_CASE("bias condition matches the brute-force quadratic form") {
    for (std::uint64_t seed = 60; seed < 70; ++seed) {
        CAPTURE(seed);
        const Dataset d = random_dataset(18, 2, seed);
        const CanonicalForm c = canonicalize(d);
        Xoshiro256 rng(seed + 19);
        Eigen::VectorXd kc(2);
        kc << 0.3 + rng.uniform(), 0.4 + rng.uniform();
        const double k_inc = 0.05;
        const ShrinkageSpec chal = ShrinkageSpec::general(kc);
        const ShrinkageSpec inc = ShrinkageSpec::uniform(2, k_inc);
        Eigen::Vector2d beta_true(1.0 + rng.uniform(), -rng.uniform());
        const double sigma2 = 0.5;

        const DominanceVerdict v =
            compare_specs(c, chal, inc, beta_true, sigma2);
        REQUIRE(v.strictly_pd);
        REQUIRE(v.condition_evaluated);
        CHECK(v.condition_value >= 0.0);

        // Explicit assembly of beta'(C1 X - I)' S^-1 (C1 X - I) beta.
        const Eigen::MatrixXd gram = d.x.transpose() * d.x;
        const Eigen::MatrixXd gamma = c.eigen.vectors;
        const Eigen::MatrixXd bracket_c =
            (gram + gamma * chal.k.asDiagonal() * gamma.transpose()).inverse();
        const Eigen::MatrixXd bracket_i =
            (gram + k_inc * Eigen::MatrixXd::Identity(2, 2)).inverse();
        const Eigen::MatrixXd c1x = bracket_c * gram;
        const Eigen::MatrixXd s =
            bracket_i * gram * bracket_i - bracket_c * gram * bracket_c;
        const Eigen::VectorXd shift =
            (c1x - Eigen::MatrixXd::Identity(2, 2)) * beta_true;
        const double brute = shift.dot(s.inverse() * shift);
        CHECK(v.condition_value == doctest::Approx(brute).epsilon(1e-8));

        CHECK(v.tag == (v.condition_value < sigma2
                            ? DominanceTag::condition_holds
                            : DominanceTag::not_comparable));
    }
}

TEST_CASE("bias condition refuses non-PD structure") {
    const Dataset d = random_dataset(20, 3, 71);
    const CanonicalForm c = canonicalize(d);
    const DominanceVerdict v =
        compare_specs(c, ShrinkageSpec::zero(3), ShrinkageSpec::zero(3),
                      Eigen::Vector3d(1.0, 1.0, 1.0), 0.5);
    CHECK(v.tag == DominanceTag::not_comparable);
    CHECK_FALSE(v.condition_evaluated);
}

TEST_CASE("corollary suite labels and orders its reports") {
    const Dataset d = random_dataset(25, 4, 81);
    const CanonicalForm c = canonicalize(d);
    Xoshiro256 rng(82);
    Eigen::VectorXd kc(4);
    for (int j = 0; j < 4; ++j) kc(j) = 0.1 + rng.uniform();
    const ShrinkageSpec percoord = ShrinkageSpec::general(kc);
    const ShrinkageSpec single = ShrinkageSpec::single(4, 1, 0.3);

    const auto checks = corollary_checks(
        c, percoord, single, {{"hkb", 0.05}, {"hk", 0.02}});
    REQUIRE(checks.size() == 8);
    CHECK(checks[0].first == "percoord vs hkb");
    CHECK(checks[1].first == "percoord vs hk");
    CHECK(checks[2].first == "percoord vs ols");
    CHECK(checks[3].first == "single vs ols");
    CHECK(checks[4].first == "hkb vs ols");
    CHECK(checks[5].first == "hk vs ols");
    CHECK(checks[6].first == "hkb vs single");
    CHECK(checks[7].first == "hk vs single");

    // Every positive challenger beats no shrinkage.
    CHECK(checks[2].second.tag == DominanceTag::dominates);
    CHECK(checks[4].second.tag == DominanceTag::dominates);
}

TEST_CASE("comparison_diagonal validates dimensions") {
    const Dataset d = random_dataset(20, 3, 91);
    const CanonicalForm c = canonicalize(d);
    CHECK_THROWS_AS(
        comparison_diagonal(c, ShrinkageSpec::zero(4), ShrinkageSpec::zero(3)),
        UsageError);
}
