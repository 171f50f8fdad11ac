#include "mvc/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mvc/error.hpp"

namespace mvc {

SimilarityMatrix::SimilarityMatrix(Matrix data) : data_(std::move(data)) {
    if (data_.rows() != data_.cols()) {
        throw InvalidInput("similarity matrix must be square, got " + std::to_string(data_.rows()) +
                           "x" + std::to_string(data_.cols()));
    }
    if (!data_.allFinite()) throw InvalidInput("similarity matrix has non-finite entries");
    if (data_.size() > 0 && data_.minCoeff() < 0.0) {
        throw InvalidInput("similarity matrix has negative entries");
    }
    row_stochastic_ = data_.rows() > 0 &&
                      ((data_.rowwise().sum().array() - 1.0).abs() <= 1e-8).all();
}

SimilarityMatrix build_knn_similarity(const Matrix& features, int k) {
    const Eigen::Index n = features.rows();
    if (k < 1) throw InvalidInput("build_knn_similarity: k must be >= 1");
    if (k >= n) {
        throw InvalidInput("build_knn_similarity: k = " + std::to_string(k) +
                           " needs more than k samples, got " + std::to_string(n));
    }
    if (!features.allFinite()) throw InvalidInput("build_knn_similarity: non-finite features");

    const Vector sq = features.rowwise().squaredNorm();
    Matrix dist = (-2.0 * features * features.transpose()).colwise() + sq;
    dist.rowwise() += sq.transpose();
    dist = dist.cwiseMax(0.0);

    Matrix s = Matrix::Zero(n, n);
    std::vector<int> order(static_cast<std::size_t>(n - 1));
    for (Eigen::Index i = 0; i < n; ++i) {
        order.clear();
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) order.push_back(static_cast<int>(j));
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return dist(i, a) < dist(i, b); });

        const bool has_next = static_cast<Eigen::Index>(order.size()) > k;
        double denom = 0.0;
        double d_next = 0.0;
        if (has_next) {
            d_next = dist(i, order[k]);
            double sum_k = 0.0;
            for (int m = 0; m < k; ++m) sum_k += dist(i, order[m]);
            denom = k * d_next - sum_k;
        }
        if (!has_next || denom <= 1e-14 * std::max(1.0, k * d_next)) {
            for (int m = 0; m < k; ++m) s(i, order[m]) = 1.0 / k;
        } else {
            for (int m = 0; m < k; ++m) s(i, order[m]) = (d_next - dist(i, order[m])) / denom;
        }
    }
    return SimilarityMatrix(std::move(s));
}

Matrix laplacian_of(const Matrix& s) {
    if (s.rows() != s.cols()) throw InvalidInput("laplacian: matrix is not square");
    if (s.size() > 0 && s.minCoeff() < 0.0) throw InvalidInput("laplacian: negative entries");
    const Matrix w = 0.5 * (s + s.transpose());
    Matrix l = -w;
    l.diagonal() += w.rowwise().sum();
    return l;
}

LaplacianMatrix laplacian(const SimilarityMatrix& s) { return LaplacianMatrix(laplacian_of(s.data())); }

namespace {

struct DisjointSets {
    explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)), rank(static_cast<std::size_t>(n), 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank[a] < rank[b]) std::swap(a, b);
        parent[b] = a;
        if (rank[a] == rank[b]) ++rank[a];
    }
    std::vector<int> parent;
    std::vector<int> rank;
};

}  // namespace

Components connected_components(const Matrix& s, double edge_eps) {
    if (s.rows() != s.cols()) throw InvalidInput("connected_components: matrix is not square");
    const int n = static_cast<int>(s.rows());
    DisjointSets sets(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (0.5 * (s(i, j) + s(j, i)) > edge_eps) sets.unite(i, j);

    Components out;
    out.labels.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> id_of_root(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        const int root = sets.find(i);
        if (id_of_root[root] < 0) id_of_root[root] = out.count++;
        out.labels[i] = id_of_root[root];
    }
    return out;
}

double kyfan_value(const LaplacianMatrix& l, int count) {
    const EigenPairs pairs = smallest_eigenpairs(l.data(), count);
    return std::max(0.0, pairs.values.sum());
}

}  // namespace mvc
