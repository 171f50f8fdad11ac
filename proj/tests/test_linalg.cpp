#include <gtest/gtest.h>

#include "mvc/error.hpp"
#include "mvc/graph.hpp"
#include "mvc/linalg.hpp"
#include "oracles.hpp"

using namespace mvc;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

}  // namespace

TEST(Simplex, ProjectionExamples) {
    EXPECT_TRUE(project_to_simplex(vec({0.5, 0.5})).isApprox(vec({0.5, 0.5})));
    EXPECT_TRUE(project_to_simplex(vec({2.0, 0.0})).isApprox(vec({1.0, 0.0})));
    const Vector p = project_to_simplex(vec({0.4, 0.2, 0.1}));
    EXPECT_NEAR(p(0), 0.5, 1e-12);
    EXPECT_NEAR(p(1), 0.3, 1e-12);
    EXPECT_NEAR(p(2), 0.2, 1e-12);
}

TEST(Simplex, MatchesGridOracle) {
    // [0.4, 0.2, 0.1] against a 1/300 grid on the 2-simplex
    const Vector v = vec({0.4, 0.2, 0.1});
    const Vector grid = oracle::grid_argmin(3, 300, [&](const Vector& x) { return (x - v).squaredNorm(); });
    EXPECT_LE((grid - project_to_simplex(v)).cwiseAbs().maxCoeff(), 1.0 / 300);
}

TEST(Simplex, RejectsBadInput) {
    EXPECT_THROW(project_to_simplex(Vector()), InvalidInput);
    EXPECT_THROW(project_to_simplex(vec({1.0, std::nan("")})), InvalidInput);
    EXPECT_THROW(project_to_simplex(vec({1.0, INFINITY})), InvalidInput);
}

TEST(Simplex, OptimalAgainstGridPoints) {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + trial % 3;
        Vector v(d);
        for (int i = 0; i < d; ++i) v(i) = rng.uniform(-2.0, 2.0);
        const Vector p = project_to_simplex(v);
        ASSERT_TRUE(on_simplex(p));
        const double dist = (p - v).norm();
        oracle::for_each_grid_point(d, 24, [&](const Vector& x) { ASSERT_LE(dist, (x - v).norm() + 1e-9); });
    }
}

TEST(Simplex, Idempotent) {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        Vector v(7);
        for (int i = 0; i < 7; ++i) v(i) = rng.uniform(-3.0, 3.0);
        const Vector p = project_to_simplex(v);
        EXPECT_LE((project_to_simplex(p) - p).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Eigen, IdentityAndComponents) {
    const EigenPairs id = smallest_eigenpairs(Matrix::Identity(3, 3), 2);
    EXPECT_NEAR(id.values(0), 1.0, 1e-12);
    EXPECT_NEAR(id.values(1), 1.0, 1e-12);

    Matrix s = Matrix::Zero(9, 9);
    for (int b = 0; b < 3; ++b) s.block(3 * b, 3 * b, 3, 3).setConstant(1.0 / 3.0);
    const EigenPairs z = smallest_eigenpairs(laplacian_of(s), 3);
    EXPECT_LE(z.values.cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Eigen, MatchesGeneralSolverOracle) {
    Rng rng(3);
    const Matrix a = oracle::random_symmetric(5, rng);
    const EigenPairs e = smallest_eigenpairs(a, 5);
    const Vector expected = oracle::general_eigenvalues(a);
    EXPECT_LE((e.values - expected).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((e.vectors.transpose() * e.vectors - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-8);
    for (int k = 0; k < 5; ++k) {
        EXPECT_LE((a * e.vectors.col(k) - e.values(k) * e.vectors.col(k)).norm(), 1e-6 * a.norm());
    }
}

TEST(Eigen, ResidualProperty) {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + trial % 9;
        const Matrix a = oracle::random_symmetric(n, rng);
        const EigenPairs e = smallest_eigenpairs(a, 1 + trial % n);
        for (Eigen::Index k = 0; k < e.values.size(); ++k)
            EXPECT_LE((a * e.vectors.col(k) - e.values(k) * e.vectors.col(k)).norm(), 1e-6 * a.norm());
    }
}

TEST(Eigen, SymmetrizesInput) {
    Matrix a(2, 2);
    a << 2.0, 1.0, 0.0, 2.0;  // symmetrized: [[2, .5], [.5, 2]]
    const EigenPairs e = smallest_eigenpairs(a, 2);
    EXPECT_NEAR(e.values(0), 1.5, 1e-12);
    EXPECT_NEAR(e.values(1), 2.5, 1e-12);
}

TEST(Eigen, RejectsBadCount) {
    EXPECT_THROW(smallest_eigenpairs(Matrix::Identity(3, 3), 4), InvalidInput);
    EXPECT_THROW(smallest_eigenpairs(Matrix::Identity(3, 3), 0), InvalidInput);
    EXPECT_THROW(smallest_eigenpairs(Matrix::Identity(3, 2), 1), InvalidInput);
}

TEST(Assignment, SmallExamples) {
    Matrix a(2, 2);
    a << 0, 1, 1, 0;
    EXPECT_EQ(optimal_assignment(a), (std::vector<int>{0, 1}));
    Matrix b(2, 2);
    b << 1, 0, 0, 1;
    EXPECT_EQ(optimal_assignment(b), (std::vector<int>{1, 0}));
    EXPECT_DOUBLE_EQ(assignment_cost(b, optimal_assignment(b)), 0.0);
}

TEST(Assignment, MatchesExhaustiveSearch) {
    Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const int c = 1 + trial % 6;
        Matrix cost(c, c);
        for (int i = 0; i < c; ++i)
            for (int j = 0; j < c; ++j) cost(i, j) = trial % 2 ? rng.uniform(-5, 5) : rng.index(4);
        const std::vector<int> perm = optimal_assignment(cost);
        std::vector<int> sorted = perm;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < c; ++i) ASSERT_EQ(sorted[i], i);
        EXPECT_NEAR(assignment_cost(cost, perm), oracle::brute_assignment_cost(cost), 1e-9);
    }
}

TEST(Assignment, RejectsNonSquare) {
    EXPECT_THROW(optimal_assignment(Matrix::Zero(2, 3)), InvalidInput);
}
