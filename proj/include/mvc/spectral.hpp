#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvc/alternating.hpp"
#include "mvc/linalg.hpp"
#include "mvc/weights.hpp"

namespace mvc {

struct KMeansResult {
    std::vector<int> labels;
    Matrix centers;  ///< k x d
    double inertia = 0.0;
};

/// Lloyd's k-means with k-means++ seeding; best of `restarts` by inertia.
/// `points` is N x d.
KMeansResult kmeans(const Matrix& points, int k, int restarts, std::uint64_t seed, int max_iter = 300);

enum class CutType { Ratio, Normalized };

struct ScConfig {
    int clusters = 2;
    CutType cut = CutType::Ratio;
    int kmeans_restarts = 10;
    std::uint64_t seed = 0;
    double edge_eps = 1e-8;
};

struct ScState {
    Matrix G;            ///< N x C relaxed indicator (orthonormal, or D-orthonormal for NC)
    Vector eigenvalues;  ///< C smallest of the combined problem
};

/// Spectral cut on sum_v c_v L_v with Phi_v(G) = Tr(G^T L_v G).
/// Views are symmetrized as (W + W^T) / 2. For the normalized cut the
/// constraint is G^T D G = I with D the degree matrix of sum_v c_v W_v.
class ScLearner {
public:
    using State = ScState;

    ScLearner(const std::vector<Matrix>& views, ScConfig config);

    int view_count() const { return static_cast<int>(laplacians_.size()); }
    State solve_weighted(const Vector& coeffs, const State* warm);
    Vector per_view_losses(const State& state) const;

    /// Connected components of the union graph sum_v W_v.
    int union_components() const { return union_components_; }

private:
    std::vector<Matrix> laplacians_;
    std::vector<Vector> degrees_;
    ScConfig config_;
    int union_components_ = 0;
};

struct ScResult {
    std::vector<int> labels;
    Vector weights;  ///< normalized
    WeightVector raw_weights;
    Matrix G;
    std::vector<double> trace;
    std::vector<std::string> warnings;
    AlternatingResult<ScState> run;
};

/// Multi-view spectral clustering under any weight scheme. The alternation
/// runs on the continuous relaxation; k-means rounding of the rows of G
/// happens once after it converges.
ScResult sc_multiview(const std::vector<Matrix>& views, const WeightScheme& scheme, const ScConfig& config,
                      const AlternatingConfig& alternating = {});

/// SC-IW: minimizes sum_v Tr(G^T L_v G)^(p/2).
ScResult sc_iw(const std::vector<Matrix>& views, int clusters, double p, CutType cut = CutType::Ratio,
               std::uint64_t seed = 0);

}  // namespace mvc
