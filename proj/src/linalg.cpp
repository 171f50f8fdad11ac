#include "mvc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "mvc/error.hpp"

namespace mvc {

Vector project_to_simplex(const Eigen::Ref<const Vector>& v) {
    const Eigen::Index d = v.size();
    if (d == 0) throw InvalidInput("project_to_simplex: empty vector");
    if (!v.allFinite()) throw InvalidInput("project_to_simplex: non-finite input");

    std::vector<double> sorted(v.data(), v.data() + d);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    // theta = (sum of the rho largest - 1) / rho, for the largest rho that keeps
    // the rho-th entry above the threshold.
    double cumsum = 0.0;
    double theta = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
        cumsum += sorted[k];
        const double candidate = (cumsum - 1.0) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0.0) theta = candidate;
    }
    return (v.array() - theta).max(0.0).matrix();
}

bool on_simplex(const Eigen::Ref<const Vector>& x, double tol) {
    if (x.size() == 0 || !x.allFinite()) return false;
    return x.minCoeff() >= -tol && std::abs(x.sum() - 1.0) <= tol;
}

EigenPairs smallest_eigenpairs(const Matrix& a, int count) {
    if (a.rows() != a.cols()) throw InvalidInput("smallest_eigenpairs: matrix is not square");
    if (count < 1 || count > a.rows()) {
        throw InvalidInput("smallest_eigenpairs: count " + std::to_string(count) +
                           " outside [1, " + std::to_string(a.rows()) + "]");
    }
    if (!a.allFinite()) throw InvalidInput("smallest_eigenpairs: non-finite entries");

    const Matrix sym = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw SolverError("smallest_eigenpairs: dense symmetric solver did not converge (n = " +
                          std::to_string(a.rows()) + ")");
    }
    return {solver.eigenvalues().head(count), solver.eigenvectors().leftCols(count)};
}

Vector symmetric_eigenvalues(const Matrix& a) {
    if (a.rows() != a.cols()) throw InvalidInput("symmetric_eigenvalues: matrix is not square");
    const Matrix sym = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw SolverError("symmetric_eigenvalues: dense symmetric solver did not converge");
    }
    return solver.eigenvalues();
}

std::vector<int> optimal_assignment(const Matrix& cost) {
    if (cost.rows() != cost.cols()) {
        throw InvalidInput("optimal_assignment: cost matrix is " + std::to_string(cost.rows()) +
                           "x" + std::to_string(cost.cols()) + ", expected square");
    }
    if (!cost.allFinite()) throw InvalidInput("optimal_assignment: non-finite cost");
    const int n = static_cast<int>(cost.rows());
    if (n == 0) return {};

    // Shortest augmenting path with row/column potentials, 1-based internally.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> match_col(n + 1, 0), way(n + 1, 0);
    for (int row = 1; row <= n; ++row) {
        match_col[0] = row;
        int col0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[col0] = 1;
            const int row0 = match_col[col0];
            double delta = inf;
            int col1 = 0;
            for (int col = 1; col <= n; ++col) {
                if (used[col]) continue;
                const double cur = cost(row0 - 1, col - 1) - u[row0] - v[col];
                if (cur < minv[col]) {
                    minv[col] = cur;
                    way[col] = col0;
                }
                if (minv[col] < delta) {
                    delta = minv[col];
                    col1 = col;
                }
            }
            for (int col = 0; col <= n; ++col) {
                if (used[col]) {
                    u[match_col[col]] += delta;
                    v[col] -= delta;
                } else {
                    minv[col] -= delta;
                }
            }
            col0 = col1;
        } while (match_col[col0] != 0);
        do {
            const int col1 = way[col0];
            match_col[col0] = match_col[col1];
            col0 = col1;
        } while (col0 != 0);
    }

    std::vector<int> perm(n, -1);
    for (int col = 1; col <= n; ++col) perm[match_col[col] - 1] = col - 1;
    return perm;
}

double assignment_cost(const Matrix& cost, const std::vector<int>& perm) {
    double total = 0.0;
    for (std::size_t r = 0; r < perm.size(); ++r) total += cost(static_cast<Eigen::Index>(r), perm[r]);
    return total;
}

}  // namespace mvc
