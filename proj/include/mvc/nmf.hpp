#pragma once

#include <cstdint>
#include <vector>

#include "mvc/alternating.hpp"
#include "mvc/linalg.hpp"
#include "mvc/weights.hpp"

namespace mvc {

struct NmfConfig {
    int clusters = 2;
    int restarts = 10;
    int max_iter = 100;  ///< inner F-step / G-step rounds per weighted solve
    std::uint64_t seed = 0;
};

struct NmfState {
    std::vector<int> labels;         ///< one-hot G stored as a label per row
    std::vector<Matrix> centroids;   ///< per view, C x d_v (row c = mean of cluster c)
};

/// Indicator factorization X_v ~ G F_v^T for views given as N x d_v feature
/// matrices, with Phi_v = ||X_v - G F_v^T||_F^2.
///
/// A cold solve starts from a random one-hot G drawn from the learner's seed;
/// a warm solve continues from the previous assignment.
class NmfLearner {
public:
    using State = NmfState;

    NmfLearner(const std::vector<Matrix>& views, NmfConfig config);

    int view_count() const { return static_cast<int>(views_.size()); }
    State solve_weighted(const Vector& coeffs, const State* warm);
    Vector per_view_losses(const State& state) const;

    /// Cluster means of every view for a fixed assignment. Every cluster must
    /// be nonempty.
    std::vector<Matrix> centroids_for(const std::vector<int>& labels) const;

    /// Weighted row cost sum_v c_v ||x_v,i - f_v,c||^2 for every candidate c.
    Vector row_costs(const Vector& coeffs, const std::vector<Matrix>& centroids, Eigen::Index row) const;

    /// Inner objective sum_v c_v Phi_v.
    double weighted_objective(const Vector& coeffs, const State& state) const;

    /// Moves the point farthest from its centroid in the largest cluster into
    /// each empty cluster until none is empty.
    void repair_empty(const Vector& coeffs, std::vector<int>& labels) const;

    /// Per-solve history of the inner objective (last solve only).
    const std::vector<double>& inner_trace() const { return inner_trace_; }

private:
    std::vector<Matrix> views_;
    NmfConfig config_;
    std::uint64_t draws_ = 0;
    std::vector<double> inner_trace_;
};

struct NmfResult {
    std::vector<int> labels;
    std::vector<Matrix> centroids;
    Vector weights;  ///< normalized
    WeightVector raw_weights;
    std::vector<double> trace;
    AlternatingResult<NmfState> run;
    int best_restart = 0;
};

/// Multi-view indicator factorization under any weight scheme. The whole
/// alternation is repeated from `restarts` random assignments and the run with
/// the smallest final scheme objective is kept.
NmfResult nmf_multiview(const std::vector<Matrix>& views, const WeightScheme& scheme, const NmfConfig& config,
                        const AlternatingConfig& alternating = {});

/// NMF-IW: minimizes sum_v ||X_v - G F_v^T||_F^p.
NmfResult nmf_iw(const std::vector<Matrix>& views, int clusters, double p, std::uint64_t seed = 0);

}  // namespace mvc
