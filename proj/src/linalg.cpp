#include "ridgeforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "ridgeforge/errors.hpp"

namespace ridgeforge {

bool is_symmetric(const SymMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    if (a.size() == 0) return true;
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = i + 1; j < a.cols(); ++j)
            sum += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(sum);
}

// One Jacobi rotation zeroing a(i,j), accumulated into v.
void rotate(Eigen::MatrixXd& a, Eigen::MatrixXd& v, Eigen::Index i,
            Eigen::Index j) {
    const double apq = a(i, j);
    if (apq == 0.0) return;
    const double tau = (a(j, j) - a(i, i)) / (2.0 * apq);
    // tan of the rotation angle: the root of t^2 + 2 tau t - 1 = 0 with the
    // smaller magnitude, for numerical stability.
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Eigen::Index p = a.rows();
    for (Eigen::Index k = 0; k < p; ++k) {
        const double aki = a(k, i);
        const double akj = a(k, j);
        a(k, i) = c * aki - s * akj;
        a(k, j) = s * aki + c * akj;
    }
    for (Eigen::Index k = 0; k < p; ++k) {
        const double aik = a(i, k);
        const double ajk = a(j, k);
        a(i, k) = c * aik - s * ajk;
        a(j, k) = s * aik + c * ajk;
    }
    for (Eigen::Index k = 0; k < p; ++k) {
        const double vki = v(k, i);
        const double vkj = v(k, j);
        v(k, i) = c * vki - s * vkj;
        v(k, j) = s * vki + c * vkj;
    }
}

} // namespace

EigenSystem eigen_decompose(const SymMatrix& a, double tol, int max_sweeps) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw UsageError("eigen_decompose: matrix must be square and nonempty, got " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
    if (!is_symmetric(a))
        throw UsageError("eigen_decompose: matrix is not symmetric");

    const Eigen::Index p = a.rows();
    Eigen::MatrixXd work = (a + a.transpose()) / 2.0;
    Eigen::MatrixXd vec = Eigen::MatrixXd::Identity(p, p);
    const double scale = work.norm();

    bool converged = (p < 2) || scale == 0.0;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        if (off_diagonal_norm(work) <= tol * scale) {
            converged = true;
            break;
        }
        for (Eigen::Index i = 0; i < p - 1; ++i)
            for (Eigen::Index j = i + 1; j < p; ++j)
                rotate(work, vec, i, j);
    }
    if (!converged && off_diagonal_norm(work) > tol * scale)
        throw NumericError(
            "eigen_decompose: Jacobi sweep limit reached without convergence "
            "(off-diagonal norm " +
            std::to_string(off_diagonal_norm(work)) + ")");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) {
                         return work(x, x) > work(y, y);
                     });

    EigenSystem es;
    es.values.resize(p);
    es.vectors.resize(p, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        es.values(j) = work(order[static_cast<std::size_t>(j)],
                            order[static_cast<std::size_t>(j)]);
        es.vectors.col(j) = vec.col(order[static_cast<std::size_t>(j)]);
    }
    return es;
}

void require_full_rank(const EigenSystem& es, double tol) {
    if (es.values.size() == 0)
        throw NumericError("require_full_rank: empty eigensystem");
    const double largest = es.values(0);
    const double smallest = es.values(es.values.size() - 1);
    if (largest <= 0.0 || smallest <= tol * largest)
        throw NumericError(
            "rank deficiency: smallest eigenvalue " + std::to_string(smallest) +
            " is not positive relative to largest " + std::to_string(largest));
}

Eigen::VectorXd solve_spd(const SymMatrix& a, const Eigen::VectorXd& b) {
    if (a.rows() != a.cols() || a.rows() != b.size())
        throw UsageError("solve_spd: dimension mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success)
        throw NumericError("solve_spd: matrix is not positive definite");
    return llt.solve(b);
}

SymMatrix inverse_spd(const SymMatrix& a) {
    if (a.rows() != a.cols())
        throw UsageError("inverse_spd: matrix must be square");
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success)
        throw NumericError("inverse_spd: matrix is not positive definite");
    return llt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
}

double quad_form(const SymMatrix& a, const Eigen::VectorXd& x) {
    if (a.rows() != a.cols() || a.rows() != x.size())
        throw UsageError("quad_form: dimension mismatch");
    return x.dot(a * x);
}

} // namespace ridgeforge
