#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "ridgeforge/bootstrap.hpp"
#include "ridgeforge/errors.hpp"
#include "ridgeforge/ridge.hpp"
#include "ridgeforge/rng.hpp"

using namespace ridgeforge;

namespace {

Dataset linear_dataset(int n, int p, std::uint64_t seed, double noise) {
    Xoshiro256 rng(seed);
    Dataset d;
    d.x.resize(n, p);
    d.y.resize(n);
    Eigen::VectorXd coef(p);
    for (int j = 0; j < p; ++j) coef(j) = 1.0 + j;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) d.x(i, j) = 2.0 * rng.uniform() - 1.0;
        double u = 0.0;
        for (int r = 0; r < 12; ++r) u += rng.uniform();
        // Sum of 12 uniforms, recentered: variance 1, nearly normal.
        d.y(i) = d.x.row(i).dot(coef) + noise * (u - 6.0);
    }
    d.column_names.resize(p);
    for (int j = 0; j < p; ++j) d.column_names[j] = "x" + std::to_string(j + 1);
    return d;
}

}  // namespace

TEST_CASE("quantile interpolates order statistics") {
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.5) == doctest::Approx(2.5));
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.0) == doctest::Approx(1.0));
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 1.0) == doctest::Approx(4.0));
    CHECK(quantile({4.0, 1.0, 3.0, 2.0}, 0.25) == doctest::Approx(1.75));
    CHECK(quantile({5.0}, 0.5) == doctest::Approx(5.0));
    CHECK_THROWS_AS(quantile({}, 0.5), UsageError);
    CHECK_THROWS_AS(quantile({1.0}, -0.1), UsageError);
    CHECK_THROWS_AS(quantile({1.0}, 1.1), UsageError);
}

TEST_CASE("config validation") {
    const Dataset d = linear_dataset(30, 3, 1, 0.1);
    const ShrinkageSpec spec = ShrinkageSpec::uniform(3, 0.01);

    BootstrapConfig too_few;
    too_few.replicates = 99;
    CHECK_THROWS_AS(bootstrap_intervals(d, spec, too_few), UsageError);

    BootstrapConfig bad_level;
    bad_level.replicates = 100;
    bad_level.level = 1.0;
    CHECK_THROWS_AS(bootstrap_intervals(d, spec, bad_level), UsageError);
    bad_level.level = 0.0;
    CHECK_THROWS_AS(bootstrap_intervals(d, spec, bad_level), UsageError);
}

TEST_CASE("same seed gives identical summaries") {
    const Dataset d = linear_dataset(40, 3, 7, 0.3);
    const ShrinkageSpec spec = ShrinkageSpec::uniform(3, 0.05);
    BootstrapConfig cfg;
    cfg.replicates = 400;
    cfg.seed = 123;
    cfg.threads = 2;

    const BootstrapSummary a = bootstrap_intervals(d, spec, cfg);
    const BootstrapSummary b = bootstrap_intervals(d, spec, cfg);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
    CHECK(a.gof_lower == b.gof_lower);
    CHECK(a.gof_upper == b.gof_upper);
    CHECK(a.replicates_discarded == b.replicates_discarded);
}

TEST_CASE("thread count does not change the result") {
    const Dataset d = linear_dataset(35, 4, 11, 0.4);
    const ShrinkageSpec spec = ShrinkageSpec::uniform(4, 0.02);
    BootstrapConfig cfg;
    cfg.replicates = 500;
    cfg.seed = 77;

    cfg.threads = 1;
    const BootstrapSummary serial = bootstrap_intervals(d, spec, cfg);
    cfg.threads = 4;
    const BootstrapSummary parallel = bootstrap_intervals(d, spec, cfg);

    // Bit-identical, not merely close: replicate r always uses stream r.
    CHECK(serial.lower == parallel.lower);
    CHECK(serial.upper == parallel.upper);
    CHECK(serial.gof_lower == parallel.gof_lower);
    CHECK(serial.gof_upper == parallel.gof_upper);
}

TEST_CASE("different seeds move the intervals") {
    const Dataset d = linear_dataset(35, 3, 13, 0.5);
    const ShrinkageSpec spec = ShrinkageSpec::uniform(3, 0.05);
    BootstrapConfig cfg;
    cfg.replicates = 300;
    cfg.seed = 1;
    const BootstrapSummary a = bootstrap_intervals(d, spec, cfg);
    cfg.seed = 2;
    const BootstrapSummary b = bootstrap_intervals(d, spec, cfg);
    CHECK(a.lower != b.lower);
}

TEST_CASE("point estimate matches a direct fit and intervals cover it") {
    const Dataset d = linear_dataset(60, 3, 17, 0.3);
    const CanonicalForm c = canonicalize(d);
    const ShrinkageSpec spec = ShrinkageSpec::uniform(3, 0.01);
    const RidgeFit fit = ridge_fit(c, d, spec, 1.0);

    BootstrapConfig cfg;
    cfg.replicates = 2000;
    cfg.seed = 5;
    const BootstrapSummary s = bootstrap_intervals(d, spec, cfg);

    CHECK((s.point - fit.beta).norm() < 1e-12);
    for (int j = 0; j < 3; ++j) {
        CAPTURE(j);
        CHECK(s.lower(j) <= s.upper(j));
        // With slopes 1..3 and modest noise every interval is tight around
        // the point estimate.
        CHECK(s.lower(j) < s.point(j) + 0.2);
        CHECK(s.upper(j) > s.point(j) - 0.2);
        CHECK(s.significant[j] == (s.lower(j) > 0.0 || s.upper(j) < 0.0));
    }
    CHECK(s.gof_lower <= s.gof_point + 1e-12);
    CHECK(s.gof_upper >= s.gof_point - 1e-12);
    CHECK(s.replicates_used + s.replicates_discarded == 2000);
}

TEST_CASE("strong signals are significant, pure noise is not") {
    const Dataset d = linear_dataset(80, 2, 23, 0.2);
    // Append a pure-noise regressor.
    Dataset with_noise = d;
    with_noise.x.conservativeResize(Eigen::NoChange, 3);
    Xoshiro256 rng(900);
    for (int i = 0; i < 80; ++i) with_noise.x(i, 2) = 2.0 * rng.uniform() - 1.0;
    with_noise.column_names.push_back("x3");

    BootstrapConfig cfg;
    cfg.replicates = 1000;
    cfg.seed = 3;
    const BootstrapSummary s =
        bootstrap_intervals(with_noise, ShrinkageSpec::uniform(3, 0.01), cfg);
    CHECK(s.significant[0]);  // slope 1
    CHECK(s.significant[1]);  // slope 2
    CHECK_FALSE(s.significant[2]);
}

TEST_CASE("narrower level gives a narrower interval") {
    const Dataset d = linear_dataset(50, 3, 29, 0.5);
    const ShrinkageSpec spec = ShrinkageSpec::uniform(3, 0.05);
    BootstrapConfig cfg;
    cfg.replicates = 1500;
    cfg.seed = 8;
    cfg.level = 0.95;
    const BootstrapSummary wide = bootstrap_intervals(d, spec, cfg);
    cfg.level = 0.5;
    const BootstrapSummary narrow = bootstrap_intervals(d, spec, cfg);
    for (int j = 0; j < 3; ++j) {
        CAPTURE(j);
        CHECK(narrow.upper(j) - narrow.lower(j) <
              wide.upper(j) - wide.lower(j));
    }
}

TEST_CASE("rank-deficient resamples without shrinkage are discarded or fail") {
    // Two distinct rows only: most resamples of size 4 are rank deficient,
    // far past any discard budget.
    Dataset d;
    d.x.resize(4, 2);
    d.x << 1.0, 0.0,
           1.0, 0.0,
           1.0, 0.0,
           0.0, 1.0;
    d.y.resize(4);
    d.y << 1.0, 1.1, 0.9, 2.0;
    d.column_names = {"a", "b"};

    BootstrapConfig cfg;
    cfg.replicates = 200;
    cfg.seed = 9;
    CHECK_THROWS_AS(bootstrap_intervals(d, ShrinkageSpec::zero(2), cfg),
                    NumericError);

    // Positive shrinkage everywhere regularizes every resample, so the same
    // draws all survive.
    const BootstrapSummary s =
        bootstrap_intervals(d, ShrinkageSpec::uniform(2, 0.5), cfg);
    CHECK(s.replicates_discarded == 0);
    CHECK(s.replicates_used == 200);
}

TEST_CASE("resolved_threads prefers the request, then the environment") {
    CHECK(resolved_threads(3) == 3);

    setenv("RIDGEFORGE_THREADS", "2", 1);
    CHECK(resolved_threads(0) == 2);
    setenv("RIDGEFORGE_THREADS", "garbage", 1);
    CHECK(resolved_threads(0) >= 1);
    setenv("RIDGEFORGE_THREADS", "-4", 1);
    CHECK(resolved_threads(0) >= 1);
    unsetenv("RIDGEFORGE_THREADS");
    CHECK(resolved_threads(0) >= 1);
}
