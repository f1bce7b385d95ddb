#include "doctest.h"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "ridgeforge/errors.hpp"
#include "ridgeforge/linalg.hpp"
#include "ridgeforge/rng.hpp"

using namespace ridgeforge;

namespace {

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = 2.0 * rng.uniform() - 1.0;
    return 0.5 * (m + m.transpose());
}

Eigen::MatrixXd random_spd(int n, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = 2.0 * rng.uniform() - 1.0;
    return m.transpose() * m + n * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

TEST_CASE("eigen_decompose agrees with Eigen's solver on random symmetric matrices") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        CAPTURE(seed);
        const int n = 2 + static_cast<int>(seed % 9);
        const Eigen::MatrixXd a = random_symmetric(n, seed);

        const EigenSystem sys = eigen_decompose(a);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(a);
        REQUIRE(oracle.info() == Eigen::Success);
        // The oracle sorts ascending, ours sorts descending.
        Eigen::VectorXd expected = oracle.eigenvalues().reverse();

        REQUIRE(sys.values.size() == n);
        for (int i = 0; i < n; ++i) {
            CAPTURE(i);
            CHECK(sys.values(i) == doctest::Approx(expected(i)).epsilon(1e-10));
        }
    }
}

TEST_CASE("eigen_decompose reconstructs the input and returns orthonormal vectors") {
    for (std::uint64_t seed = 30; seed < 40; ++seed) {
        CAPTURE(seed);
        const int n = 3 + static_cast<int>(seed % 7);
        const Eigen::MatrixXd a = random_symmetric(n, seed);
        const EigenSystem sys = eigen_decompose(a);

        const Eigen::MatrixXd recon =
            sys.vectors * sys.values.asDiagonal() * sys.vectors.transpose();
        CHECK((recon - a).norm() <= 1e-10 * (1.0 + a.norm()));

        const Eigen::MatrixXd gram = sys.vectors.transpose() * sys.vectors;
        CHECK((gram - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-10);

        for (int i = 0; i + 1 < n; ++i) CHECK(sys.values(i) >= sys.values(i + 1));
    }
}

TEST_CASE("eigen_decompose handles diagonal and rank-one extremes") {
    Eigen::MatrixXd d = Eigen::Vector3d(5.0, -2.0, 9.0).asDiagonal();
    EigenSystem sys = eigen_decompose(d);
    CHECK(sys.values(0) == doctest::Approx(9.0));
    CHECK(sys.values(1) == doctest::Approx(5.0));
    CHECK(sys.values(2) == doctest::Approx(-2.0));

    // Rank-one: vvT with |v|^2 = 14 has eigenvalues {14, 0, 0}.
    Eigen::Vector3d v(1.0, 2.0, 3.0);
    sys = eigen_decompose(v * v.transpose());
    CHECK(sys.values(0) == doctest::Approx(14.0));
    CHECK(std::abs(sys.values(1)) < 1e-10);
    CHECK(std::abs(sys.values(2)) < 1e-10);
}

TEST_CASE("eigen_decompose copes with widely spread spectra") {
    // Condition number 1e8 mirrors the bundled dataset's Gram matrix.
    Eigen::Vector4d diag(1e5, 1.0, 1e-2, 1e-3);
    Eigen::MatrixXd q = random_symmetric(4, 77);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> basis(q);
    Eigen::MatrixXd rot = basis.eigenvectors();
    Eigen::MatrixXd a = rot * diag.asDiagonal() * rot.transpose();

    const EigenSystem sys = eigen_decompose(a);
    Eigen::Vector4d sorted = diag;
    std::sort(sorted.data(), sorted.data() + 4, std::greater<double>());
    for (int i = 0; i < 4; ++i) {
        CAPTURE(i);
        CHECK(sys.values(i) == doctest::Approx(sorted(i)).epsilon(1e-9));
    }
}

TEST_CASE("eigen_decompose rejects bad input") {
    Eigen::MatrixXd rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(eigen_decompose(rect), UsageError);

    Eigen::MatrixXd asym(2, 2);
    asym << 1.0, 2.0, 3.0, 4.0;
    CHECK_THROWS_AS(eigen_decompose(asym), UsageError);

    Eigen::MatrixXd empty(0, 0);
    CHECK_THROWS_AS(eigen_decompose(empty), UsageError);
}

TEST_CASE("require_full_rank flags rank deficiency") {
    Eigen::Vector3d v(1.0, 2.0, 3.0);
    const EigenSystem singular = eigen_decompose(v * v.transpose());
    CHECK_THROWS_AS(require_full_rank(singular), NumericError);

    const EigenSystem ok = eigen_decompose(random_spd(5, 11));
    CHECK_NOTHROW(require_full_rank(ok));
}

TEST_CASE("solve_spd and inverse_spd match dense oracles") {
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
        CAPTURE(seed);
        const int n = 2 + static_cast<int>(seed % 6);
        const Eigen::MatrixXd a = random_spd(n, seed);
        Xoshiro256 rng(seed + 1000);
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) b(i) = rng.uniform();

        const Eigen::VectorXd x = solve_spd(a, b);
        CHECK((a * x - b).norm() < 1e-9 * (1.0 + b.norm()));

        const Eigen::MatrixXd inv = inverse_spd(a);
        CHECK((a * inv - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-9);
    }

    Eigen::MatrixXd indefinite(2, 2);
    indefinite << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS(inverse_spd(indefinite), NumericError);
}

TEST_CASE("quad_form computes x'Ax") {
    Eigen::MatrixXd a(2, 2);
    a << 2.0, 1.0, 1.0, 3.0;
    Eigen::Vector2d x(1.0, -2.0);
    // 1*2*1 + 2*1*(-2)*1 + 3*4 = 2 - 4 + 12 = 10
    CHECK(quad_form(a, x) == doctest::Approx(10.0));
}

TEST_CASE("is_symmetric applies a relative tolerance") {
    Eigen::MatrixXd a(2, 2);
    a << 1.0, 2.0, 2.0 + 1e-14, 1.0;
    CHECK(is_symmetric(a));
    a(1, 0) = 2.1;
    CHECK_FALSE(is_symmetric(a));
}
