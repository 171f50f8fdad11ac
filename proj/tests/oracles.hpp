#pragma once

// Independent reference implementations used to check the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "mvc/linalg.hpp"
#include "mvc/random.hpp"

namespace oracle {

using mvc::Matrix;
using mvc::Vector;

/// Calls f on every point of the m-simplex whose coordinates are multiples of 1/res.
inline void for_each_grid_point(int m, int res, const std::function<void(const Vector&)>& f) {
    std::vector<int> counts(static_cast<std::size_t>(m), 0);
    Vector x(m);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == m - 1) {
            counts[i] = left;
            for (int j = 0; j < m; ++j) x(j) = static_cast<double>(counts[j]) / res;
            f(x);
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[i] = c;
            rec(i + 1, left - c);
        }
    };
    rec(0, res);
}

/// Grid argmin of f over the m-simplex.
inline Vector grid_argmin(int m, int res, const std::function<double(const Vector&)>& f) {
    Vector best;
    double best_value = std::numeric_limits<double>::infinity();
    for_each_grid_point(m, res, [&](const Vector& x) {
        const double value = f(x);
        if (value < best_value) {
            best_value = value;
            best = x;
        }
    });
    return best;
}

/// Minimum total cost over all permutations.
inline double brute_assignment_cost(const Matrix& cost) {
    std::vector<int> perm(static_cast<std::size_t>(cost.rows()));
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < perm.size(); ++i) total += cost(static_cast<Eigen::Index>(i), perm[i]);
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Best-permutation accuracy by enumerating label maps (k <= 7).
inline double brute_acc(const std::vector<int>& pred, const std::vector<int>& truth) {
    const int k = std::max(*std::max_element(pred.begin(), pred.end()), *std::max_element(truth.begin(), truth.end())) + 1;
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best = 0;
    do {
        std::size_t hit = 0;
        for (std::size_t i = 0; i < pred.size(); ++i) hit += perm[pred[i]] == truth[i];
        best = std::max(best, hit);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(pred.size());
}

/// Eigenvalues from the general (non-symmetric) solver, sorted ascending.
inline Vector general_eigenvalues(const Matrix& a) {
    Eigen::EigenSolver<Matrix> solver(a, false);
    Vector values = solver.eigenvalues().real();
    std::sort(values.data(), values.data() + values.size());
    return values;
}

/// Random column-orthonormal n x c matrix.
inline Matrix random_orthonormal(int n, int c, mvc::Rng& rng) {
    Matrix g(n, c);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < c; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ() * Matrix::Identity(n, c);
}

inline Matrix random_symmetric(int n, mvc::Rng& rng) {
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
    return 0.5 * (a + a.transpose());
}

/// Row-stochastic noisy block graph: in-block entries uniform(0, 1), off-block
/// uniform(0, noise).
inline Matrix random_block_graph(const std::vector<int>& sizes, double noise, mvc::Rng& rng) {
    std::vector<int> block;
    for (std::size_t b = 0; b < sizes.size(); ++b) block.insert(block.end(), sizes[b], static_cast<int>(b));
    const int n = static_cast<int>(block.size());
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(0.0, block[i] == block[j] ? 1.0 : noise);
    for (int i = 0; i < n; ++i) a.row(i) /= a.row(i).sum();
    return a;
}

inline std::vector<int> block_labels(const std::vector<int>& sizes) {
    std::vector<int> out;
    for (std::size_t b = 0; b < sizes.size(); ++b) out.insert(out.end(), sizes[b], static_cast<int>(b));
    return out;
}

/// Lemma inequality u^p - (p/2) u^2 / v^(2-p) <= v^p - (p/2) v^p, as lhs - rhs.
inline double lemma_gap(double u, double v, double p) {
    const double lhs = std::pow(u, p) - 0.5 * p * u * u / std::pow(v, 2.0 - p);
    const double rhs = std::pow(v, p) - 0.5 * p * v * v / std::pow(v, 2.0 - p);
    return lhs - rhs;
}

/// Spread of a single weight update between the best (phi) and worst (1) view.
inline double weight_spread(double p, double phi) {
    return 0.5 * p * std::pow(phi, 0.5 * (p - 2.0)) - 0.5 * p;
}

}  // namespace oracle
