#include <gtest/gtest.h>

#include "mvc/error.hpp"
#include "mvc/graph.hpp"
#include "oracles.hpp"

using namespace mvc;

TEST(Knn, EquidistantPoints) {
    Matrix x(3, 2);
    x << 0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2;
    const Matrix s = build_knn_similarity(x, 2).data();
    for (int i = 0; i < 3; ++i) {
        EXPECT_DOUBLE_EQ(s(i, i), 0.0);
        for (int j = 0; j < 3; ++j)
            if (i != j) EXPECT_NEAR(s(i, j), 0.5, 1e-12);
    }
}

TEST(Knn, TwoFarPairs) {
    Matrix x(4, 1);
    x << 0.0, 0.1, 100.0, 100.2;
    const Matrix s = build_knn_similarity(x, 1).data();
    EXPECT_DOUBLE_EQ(s(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(s(1, 0), 1.0);
    EXPECT_DOUBLE_EQ(s(2, 3), 1.0);
    EXPECT_DOUBLE_EQ(s(3, 2), 1.0);
    EXPECT_DOUBLE_EQ(s.sum(), 4.0);
}

TEST(Knn, ClosedFormOnRandomCloud) {
    Rng rng(4);
    Matrix x(10, 3);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 3; ++j) x(i, j) = rng.normal();
    const int k = 3;
    const SimilarityMatrix s = build_knn_similarity(x, k);
    EXPECT_TRUE(s.row_stochastic());
    for (int i = 0; i < 10; ++i) {
        std::vector<std::pair<double, int>> d;
        for (int j = 0; j < 10; ++j)
            if (j != i) d.push_back({(x.row(i) - x.row(j)).squaredNorm(), j});
        std::sort(d.begin(), d.end());
        double top = 0.0;
        for (int m = 0; m < k; ++m) top += d[m].first;
        const double denom = k * d[k].first - top;
        int nonzero = 0;
        for (int j = 0; j < 10; ++j) nonzero += s.data()(i, j) > 0.0;
        EXPECT_EQ(nonzero, k);
        for (int m = 0; m < k; ++m) {
            EXPECT_NEAR(s.data()(i, d[m].second), (d[k].first - d[m].first) / denom, 1e-12);
            if (m > 0) EXPECT_GE(s.data()(i, d[m - 1].second), s.data()(i, d[m].second));
        }
        EXPECT_NEAR(s.data().row(i).sum(), 1.0, 1e-12);
    }
}

TEST(Knn, DuplicatePointsFallBackToUniform) {
    const Matrix x = Matrix::Zero(5, 2);
    const Matrix s = build_knn_similarity(x, 2).data();
    for (int i = 0; i < 5; ++i) {
        EXPECT_NEAR(s.row(i).sum(), 1.0, 1e-12);
        EXPECT_EQ((s.row(i).array() == 0.5).count(), 2);
    }
}

TEST(Knn, RejectsLargeK) {
    EXPECT_THROW(build_knn_similarity(Matrix::Zero(4, 2), 4), InvalidInput);
    EXPECT_THROW(build_knn_similarity(Matrix::Zero(4, 2), 0), InvalidInput);
}

TEST(Laplacian, Examples) {
    EXPECT_TRUE(laplacian(SimilarityMatrix(Matrix::Zero(3, 3))).data().isZero());
    Matrix s(2, 2);
    s << 0, 1, 1, 0;
    Matrix l(2, 2);
    l << 1, -1, -1, 1;
    EXPECT_TRUE(laplacian(SimilarityMatrix(s)).data().isApprox(l));
    Matrix a(2, 2);
    a << 0, 1, 0, 0;
    Matrix la(2, 2);
    la << 0.5, -0.5, -0.5, 0.5;
    EXPECT_TRUE(laplacian(SimilarityMatrix(a)).data().isApprox(la));
}

TEST(Laplacian, RejectsNegative) {
    Matrix s(2, 2);
    s << 0, -1, 1, 0;
    EXPECT_THROW(laplacian_of(s), InvalidInput);
    EXPECT_THROW(SimilarityMatrix{s}, InvalidInput);
}

TEST(Laplacian, Invariants) {
    Rng rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix s(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) s(i, j) = rng.uniform();
        const Matrix l = laplacian_of(s);
        EXPECT_LE((l - l.transpose()).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LE(l.rowwise().sum().cwiseAbs().maxCoeff(), 1e-8);
        EXPECT_GE(oracle::general_eigenvalues(l)(0), -1e-8);
    }
}

TEST(Components, BlocksAndFull) {
    Rng rng(1);
    Matrix s = Matrix::Zero(9, 9);
    for (int b = 0; b < 3; ++b)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s(3 * b + i, 3 * b + j) = rng.uniform(0.1, 1.0);
    const Components c = connected_components(s);
    EXPECT_EQ(c.count, 3);
    EXPECT_EQ(c.labels, oracle::block_labels({3, 3, 3}));
    EXPECT_EQ(connected_components(Matrix::Constant(5, 5, 0.2)).count, 1);
}

TEST(Components, ThresholdAndAsymmetry) {
    Matrix s = Matrix::Zero(3, 3);
    s(0, 1) = 1e-9;  // (1e-9 + 0) / 2 below edge_eps
    s(1, 2) = 1.0;
    EXPECT_EQ(connected_components(s).count, 2);
    EXPECT_EQ(connected_components(s, 1e-12).count, 1);
}

TEST(KyFan, ComponentsGiveZero) {
    Matrix s = Matrix::Zero(6, 6);
    s.block(0, 0, 3, 3).setConstant(1.0);
    s.block(3, 3, 3, 3).setConstant(1.0);
    EXPECT_LE(kyfan_value(LaplacianMatrix(laplacian_of(s)), 2), 1e-7);
}

TEST(KyFan, PathGraphPositive) {
    Matrix s = Matrix::Zero(5, 5);
    for (int i = 0; i + 1 < 5; ++i) s(i, i + 1) = s(i + 1, i) = 1.0;
    EXPECT_GT(kyfan_value(LaplacianMatrix(laplacian_of(s)), 2), 1e-3);
}

TEST(KyFan, EqualsTraceMinimum) {
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 5 + trial % 8;
        Matrix s(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s(i, j) = rng.uniform();
        const Matrix l = laplacian_of(s);
        const double value = kyfan_value(LaplacianMatrix(l), 2);
        const Vector spectrum = oracle::general_eigenvalues(l);
        EXPECT_NEAR(value, spectrum(0) + spectrum(1), 1e-8);
        const EigenPairs e = smallest_eigenpairs(l, 2);
        EXPECT_NEAR(value, (e.vectors.transpose() * l * e.vectors).trace(), 1e-8);
        for (int k = 0; k < 50; ++k) {
            const Matrix f = oracle::random_orthonormal(n, 2, rng);
            EXPECT_LE(value, (f.transpose() * l * f).trace() + 1e-10);
        }
    }
}

TEST(Components, AgreeWithNullity) {
    Rng rng(13);
    for (int blocks = 1; blocks <= 4; ++blocks) {
        std::vector<int> sizes(static_cast<std::size_t>(blocks), 5);
        const Matrix s = oracle::random_block_graph(sizes, 0.0, rng);
        const Vector spectrum = oracle::general_eigenvalues(laplacian_of(s));
        EXPECT_EQ(connected_components(s).count, (spectrum.array() < 1e-7).count());
    }
}
