#pragma once

#include <vector>

#include <Eigen/Dense>

namespace mvc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Euclidean projection onto the probability simplex {x >= 0, sum(x) = 1}.
///
/// Sort-based threshold method: x_i = max(v_i - theta, 0) with theta chosen
/// so the result sums to one. Runs in O(d log d).
Vector project_to_simplex(const Eigen::Ref<const Vector>& v);

/// True when every entry is >= -tol and the entries sum to 1 within tol.
bool on_simplex(const Eigen::Ref<const Vector>& x, double tol = 1e-9);

struct EigenPairs {
    Vector values;   ///< ascending
    Matrix vectors;  ///< one column per value, orthonormal
};

/// The `count` algebraically smallest eigenpairs of a symmetric matrix.
///
/// The input is symmetrized as (A + A^T) / 2 before the solve. Eigenvectors
/// inside a degenerate eigenspace come back in solver order; callers should
/// only rely on the subspace they span.
EigenPairs smallest_eigenpairs(const Matrix& a, int count);

/// All eigenvalues of a symmetric matrix, ascending.
Vector symmetric_eigenvalues(const Matrix& a);

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method).
/// Returns perm with perm[row] = assigned column.
std::vector<int> optimal_assignment(const Matrix& cost);

double assignment_cost(const Matrix& cost, const std::vector<int>& perm);

}  // namespace mvc
