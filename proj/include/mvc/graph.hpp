#pragma once

#include <vector>

#include "mvc/linalg.hpp"

namespace mvc {

/// Square nonnegative affinity matrix over N samples.
class SimilarityMatrix {
public:
    /// Throws InvalidInput if the matrix is not square, has a negative entry,
    /// or is not finite.
    explicit SimilarityMatrix(Matrix data);

    const Matrix& data() const noexcept { return data_; }
    Eigen::Index size() const noexcept { return data_.rows(); }
    /// Every row sums to one within 1e-8.
    bool row_stochastic() const noexcept { return row_stochastic_; }

private:
    Matrix data_;
    bool row_stochastic_ = false;
};

/// L = D - (S^T + S) / 2 with D_ii = sum_j (s_ij + s_ji) / 2.
class LaplacianMatrix {
public:
    explicit LaplacianMatrix(Matrix data) : data_(std::move(data)) {}
    const Matrix& data() const noexcept { return data_; }
    Eigen::Index size() const noexcept { return data_.rows(); }

private:
    Matrix data_;
};

/// Parameter-free k-nearest-neighbour graph used by the CLR family.
///
/// Row i puts weight (d_{i,k+1} - d_ij) / (k d_{i,k+1} - sum_{m<=k} d_im) on its
/// k nearest neighbours (squared Euclidean distance, self excluded) and zero
/// elsewhere. When the denominator vanishes (duplicate points) or there is no
/// (k+1)-th neighbour, the row falls back to uniform 1/k weights.
/// `features` is N x d, one sample per row.
SimilarityMatrix build_knn_similarity(const Matrix& features, int k);

LaplacianMatrix laplacian(const SimilarityMatrix& s);

/// Same as above on a raw matrix; rejects negative entries.
Matrix laplacian_of(const Matrix& s);

struct Components {
    int count = 0;
    std::vector<int> labels;  ///< component id per vertex, ids in order of first appearance
};

/// Connected components of the undirected graph with edge (i, j) iff
/// (s_ij + s_ji) / 2 > edge_eps. Union-find, no eigen-solve.
Components connected_components(const Matrix& s, double edge_eps = 1e-8);

/// Sum of the `count` smallest eigenvalues of L, i.e. min Tr(F^T L F) over
/// column-orthonormal F with `count` columns. Clamped at zero.
double kyfan_value(const LaplacianMatrix& l, int count);

}  // namespace mvc
