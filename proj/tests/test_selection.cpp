#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <string>
#include <vector>

#include "ridgeforge/errors.hpp"
#include "ridgeforge/ridge.hpp"
#include "ridgeforge/risk.hpp"
#include "ridgeforge/rng.hpp"
#include "ridgeforge/selection.hpp"

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

// Synthetic canonical form with prescribed eigenvalues; the tie-break test
// only needs lambda and xi, nothing else.
CanonicalForm c3(std::initializer_list<double> lambdas) {
    CanonicalForm c;
    c.eigen.values = Eigen::VectorXd(static_cast<Eigen::Index>(lambdas.size()));
    Eigen::Index i = 0;
    for (double v : lambdas) c.eigen.values(i++) = v;
    c.eigen.vectors = Eigen::MatrixXd::Identity(i, i);
    c.delta = c.eigen.values;  // unused by the rules under test
    c.xi_hat = c.delta;
    c.yty = 1.0;
    c.n = 10;
    return c;
}

}  // namespace

TEST_CASE("hkb rule reproduces its formula") {
    const Dataset d = random_dataset(30, 5, 17);
    const OlsFit ols = ols_fit(d);
    const SelectionResult r = k_hkb(ols);
    CHECK(r.rule == SelectionRule::hkb);
    CHECK(r.k ==
          doctest::Approx(5.0 * ols.sigma2 / ols.beta.squaredNorm()));
    CHECK(r.spec.kind == ShrinkageSpec::Kind::uniform);
    CHECK(r.spec.k(0) == doctest::Approx(r.k));
}

TEST_CASE("hkb with a perfect fit degenerates to zero shrinkage") {
    // An exactly-zero residual variance (an error-free model) must not
    // shrink at all.
    OlsFit perfect;
    perfect.beta = Eigen::Vector3d(1.0, -2.0, 0.5);
    perfect.sigma2 = 0.0;
    const SelectionResult r = k_hkb(perfect);
    CHECK(r.k == 0.0);
    CHECK(r.spec.kind == ShrinkageSpec::Kind::zero);

    // A zero coefficient vector leaves the formula undefined.
    OlsFit flat;
    flat.beta = Eigen::Vector3d::Zero();
    flat.sigma2 = 0.5;
    CHECK_THROWS_AS(k_hkb(flat), NumericError);
}

TEST_CASE("hk rule targets the largest canonical coefficient") {
    const Dataset d = random_dataset(30, 5, 29);
    const CanonicalForm c = canonicalize(d);
    const double sigma2 = 0.25;
    const SelectionResult r = k_hk(c, sigma2, c.xi_hat);

    double xi_max = 0.0;
    for (int j = 0; j < 5; ++j)
        xi_max = std::max(xi_max, std::abs(c.xi_hat(j)));
    CHECK(r.k == doctest::Approx(sigma2 / (xi_max * xi_max)));

    // Ties resolve to the lowest index.
    Eigen::VectorXd tied(3);
    tied << -2.0, 2.0, 1.0;
    const SelectionResult t = k_hk(c3({1.0, 1.0, 1.0}), sigma2, tied);
    CHECK(t.k == doctest::Approx(sigma2 / 4.0));
}

TEST_CASE("hk rule rejects an all-zero coefficient vector") {
    const Dataset d = random_dataset(20, 3, 31);
    const CanonicalForm c = canonicalize(d);
    CHECK_THROWS_AS(k_hk(c, 0.1, Eigen::VectorXd::Zero(3)), NumericError);
}

TEST_CASE("grid walk stops at the first rise and matches exhaustive search") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        CAPTURE(seed);
        const Dataset d = random_dataset(30, 4, seed);
        const CanonicalForm c = canonicalize(d);
        const double sigma2 = 0.3;
        const Grid grid{0.0, 2.0, 1e-3};

        const SelectionResult walk = k_grid_min(c, sigma2, c.xi_hat, grid);
        const SelectionResult full = k_grid_min(c, sigma2, c.xi_hat, grid, true);

        // The MSE along a uniform path has a single interior minimum here,
        // so the early stop and the exhaustive argmin coincide.
        if (!walk.hit_grid_end) {
            CHECK(walk.k == doctest::Approx(full.k));
            CHECK(walk.mse_at_selection ==
                  doctest::Approx(full.mse_at_selection));
            CHECK(walk.mse_before >= walk.mse_at_selection);
            CHECK(walk.mse_after >= walk.mse_at_selection);
        }
        CHECK(walk.grid_step == doctest::Approx(1e-3));
    }
}

TEST_CASE("grid walk flags a path with no interior minimum") {
    const Dataset d = random_dataset(30, 4, 3);
    const CanonicalForm c = canonicalize(d);
    // A tiny grid that ends before the minimum: the walk runs off the end.
    const Grid grid{0.0, 1e-9, 1e-10};
    const SelectionResult r = k_grid_min(c, 0.3, c.xi_hat, grid);
    CHECK(r.hit_grid_end);
    CHECK(r.k == doctest::Approx(1e-9));

    // Degenerate single-point grid.
    const Grid point{0.0, 0.0, 1e-5};
    const SelectionResult rp = k_grid_min(c, 0.3, c.xi_hat, point);
    CHECK(rp.hit_grid_end);
    CHECK(rp.k == 0.0);
}

TEST_CASE("per-coordinate rule fills every slot with sigma2 over xi squared") {
    const Dataset d = random_dataset(28, 5, 41);
    const CanonicalForm c = canonicalize(d);
    const double sigma2 = 0.15;
    const SelectionResult r = per_coordinate(c, sigma2, c.xi_hat);
    CHECK(r.spec.kind == ShrinkageSpec::Kind::general);
    for (int j = 0; j < 5; ++j) {
        CAPTURE(j);
        CHECK(r.spec.k(j) ==
              doctest::Approx(sigma2 / (c.xi_hat(j) * c.xi_hat(j))));
    }
    CHECK(r.mse_at_selection ==
          doctest::Approx(mse_of(c, r.spec, sigma2, c.xi_hat).mse));
}

TEST_CASE("per-coordinate rule names vanished coordinates 1-based") {
    const Dataset d = random_dataset(20, 4, 47);
    const CanonicalForm c = canonicalize(d);
    Eigen::VectorXd xi = c.xi_hat;
    xi(0) = 0.0;
    xi(2) = 0.0;
    try {
        per_coordinate(c, 0.1, xi);
        FAIL("expected NumericError");
    } catch (const NumericError& e) {
        const std::string msg = e.what();
        CHECK(msg.find('1') != std::string::npos);
        CHECK(msg.find('3') != std::string::npos);
    }
}

TEST_CASE("single_min wraps the per-coordinate minimizer") {
    const Dataset d = random_dataset(26, 4, 53);
    const CanonicalForm c = canonicalize(d);
    const SelectionResult r = single_min(c, 2, 0.2, c.xi_hat);
    const SingleMin sm = mse_single_min(c, 2, 0.2, c.xi_hat);
    CHECK(r.index == 2);
    CHECK(r.k == doctest::Approx(sm.k));
    CHECK(r.mse_at_selection == doctest::Approx(sm.mse));
    CHECK(r.always_below_ols == sm.always_below_ols);
    CHECK(r.spec.kind == ShrinkageSpec::Kind::single);
    CHECK(r.spec.single_index == 2);
}

TEST_CASE("single_min_table has one row per coordinate in order") {
    const Dataset d = random_dataset(26, 4, 59);
    const CanonicalForm c = canonicalize(d);
    const std::vector<SingleMin> rows = single_min_table(c, 0.2, c.xi_hat);
    REQUIRE(rows.size() == 4);
    for (int j = 0; j < 4; ++j) {
        CAPTURE(j);
        CHECK(rows[j].index == j);
        const SingleMin direct = mse_single_min(c, j, 0.2, c.xi_hat);
        CHECK(rows[j].k == doctest::Approx(direct.k));
        CHECK(rows[j].mse == doctest::Approx(direct.mse));
    }
}
