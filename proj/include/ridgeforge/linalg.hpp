#pragma once

#include <Eigen/Dense>

namespace ridgeforge {

// Dense symmetric matrices are passed around as plain Eigen matrices;
// operations that require symmetry check it at entry.
using SymMatrix = Eigen::MatrixXd;

struct EigenSystem {
    Eigen::VectorXd values;   // sorted descending
    Eigen::MatrixXd vectors;  // orthonormal columns, vectors.col(j) <-> values(j)
};

bool is_symmetric(const SymMatrix& a, double tol = 1e-10);

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Converges when the off-diagonal Frobenius norm drops below tol times the
// Frobenius norm of the input; throws NumericError after max_sweeps sweeps.
// Column signs are arbitrary; every downstream formula is invariant to them.
EigenSystem eigen_decompose(const SymMatrix& a, double tol = 1e-12,
                            int max_sweeps = 100);

// Throws NumericError when values.min <= tol * values.max, i.e. the matrix
// is numerically rank deficient (or indefinite) for solving purposes.
void require_full_rank(const EigenSystem& es, double tol = 1e-12);

// Solves a x = b for symmetric positive definite a via Cholesky. Kept as a
// second, independent route beside the Jacobi path so the two can be checked
// against each other.
Eigen::VectorXd solve_spd(const SymMatrix& a, const Eigen::VectorXd& b);

// Inverse of a symmetric positive definite matrix via Cholesky.
SymMatrix inverse_spd(const SymMatrix& a);

// x' a x.
double quad_form(const SymMatrix& a, const Eigen::VectorXd& x);

} // namespace ridgeforge
