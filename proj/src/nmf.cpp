#include "mvc/nmf.hpp"

#include <limits>

#include "mvc/error.hpp"
#include "mvc/random.hpp"

namespace mvc {

NmfLearner::NmfLearner(const std::vector<Matrix>& views, NmfConfig config) : views_(views), config_(config) {
    if (views_.empty()) throw InvalidInput("NMF: no views");
    if (config_.clusters < 2) throw InvalidInput("NMF: need at least 2 clusters");
    if (config_.max_iter < 1) throw InvalidInput("NMF: max_iter must be >= 1");
    const Eigen::Index n = views_.front().rows();
    for (std::size_t v = 0; v < views_.size(); ++v) {
        if (views_[v].rows() != n) throw InvalidInput("NMF: views disagree on the number of samples");
        if (views_[v].cols() == 0) throw InvalidInput("NMF: view " + std::to_string(v) + " has no features");
        if (!views_[v].allFinite()) throw InvalidInput("NMF: view " + std::to_string(v) + " has non-finite values");
    }
    if (n < config_.clusters) throw InvalidInput("NMF: more clusters than samples");
}

std::vector<Matrix> NmfLearner::centroids_for(const std::vector<int>& labels) const {
    const int k = config_.clusters;
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (int label : labels) ++sizes[label];
    for (int c = 0; c < k; ++c)
        if (sizes[c] == 0) throw InvalidInput("NMF: empty cluster " + std::to_string(c));

    std::vector<Matrix> out;
    for (const Matrix& x : views_) {
        Matrix f = Matrix::Zero(k, x.cols());
        for (Eigen::Index i = 0; i < x.rows(); ++i) f.row(labels[i]) += x.row(i);
        for (int c = 0; c < k; ++c) f.row(c) /= sizes[c];
        out.push_back(std::move(f));
    }
    return out;
}

Vector NmfLearner::row_costs(const Vector& coeffs, const std::vector<Matrix>& centroids, Eigen::Index row) const {
    Vector cost = Vector::Zero(config_.clusters);
    for (int v = 0; v < view_count(); ++v) {
        cost += coeffs(v) * (centroids[v].rowwise() - views_[v].row(row)).rowwise().squaredNorm();
    }
    return cost;
}

void NmfLearner::repair_empty(const Vector& coeffs, std::vector<int>& labels) const {
    const int k = config_.clusters;
    for (;;) {
        std::vector<int> sizes(static_cast<std::size_t>(k), 0);
        for (int label : labels) ++sizes[label];
        int empty = -1;
        int largest = 0;
        for (int c = 0; c < k; ++c) {
            if (sizes[c] == 0 && empty < 0) empty = c;
            if (sizes[c] > sizes[largest]) largest = c;
        }
        if (empty < 0) return;

        // centroid of the largest cluster in every view
        double best = -1.0;
        Eigen::Index far = -1;
        std::vector<Vector> mean;
        for (const Matrix& x : views_) {
            Vector m = Vector::Zero(x.cols());
            for (Eigen::Index i = 0; i < x.rows(); ++i)
                if (labels[i] == largest) m += x.row(i).transpose();
            mean.push_back(m / sizes[largest]);
        }
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(labels.size()); ++i) {
            if (labels[i] != largest) continue;
            double d = 0.0;
            for (int v = 0; v < view_count(); ++v)
                d += coeffs(v) * (views_[v].row(i).transpose() - mean[v]).squaredNorm();
            if (d > best) {
                best = d;
                far = i;
            }
        }
        labels[far] = empty;
    }
}

double NmfLearner::weighted_objective(const Vector& coeffs, const State& state) const {
    return coeffs.dot(per_view_losses(state));
}

NmfState NmfLearner::solve_weighted(const Vector& coeffs, const State* warm) {
    if (coeffs.size() != view_count()) throw InvalidInput("NMF: one coefficient per view required");
    const Eigen::Index n = views_.front().rows();

    NmfState state;
    if (warm) {
        state.labels = warm->labels;
    } else {
        Rng rng(config_.seed + 0x9e3779b97f4a7c15ULL * ++draws_);
        state.labels.resize(static_cast<std::size_t>(n));
        for (int& label : state.labels) label = rng.index(config_.clusters);
    }

    inner_trace_.clear();
    for (int iter = 0; iter < config_.max_iter; ++iter) {
        repair_empty(coeffs, state.labels);
        state.centroids = centroids_for(state.labels);
        inner_trace_.push_back(weighted_objective(coeffs, state));

        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            const Vector cost = row_costs(coeffs, state.centroids, i);
            Eigen::Index best = 0;
            cost.minCoeff(&best);
            // keep the current code on ties so the loop terminates
            if (cost(best) < cost(state.labels[i])) {
                state.labels[i] = static_cast<int>(best);
                changed = true;
            }
        }
        if (!changed) break;
    }
    repair_empty(coeffs, state.labels);
    state.centroids = centroids_for(state.labels);
    inner_trace_.push_back(weighted_objective(coeffs, state));
    return state;
}

Vector NmfLearner::per_view_losses(const State& state) const {
    Vector phi(view_count());
    for (int v = 0; v < view_count(); ++v) {
        double total = 0.0;
        for (Eigen::Index i = 0; i < views_[v].rows(); ++i)
            total += (views_[v].row(i) - state.centroids[v].row(state.labels[i])).squaredNorm();
        phi(v) = total;
    }
    return phi;
}

NmfResult nmf_multiview(const std::vector<Matrix>& views, const WeightScheme& scheme, const NmfConfig& config,
                        const AlternatingConfig& alternating) {
    if (config.restarts < 1) throw InvalidInput("NMF: restarts must be >= 1");
    NmfResult out;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < config.restarts; ++r) {
        NmfConfig local = config;
        local.seed = config.seed * 1000003ULL + static_cast<std::uint64_t>(r);
        NmfLearner learner(views, local);
        AlternatingResult<NmfState> run = run_alternating(learner, scheme, alternating);
        if (run.trace.back() < best) {
            best = run.trace.back();
            out.run = std::move(run);
            out.best_restart = r;
        }
    }
    out.labels = out.run.state.labels;
    out.centroids = out.run.state.centroids;
    out.weights = out.run.normalized_weights;
    out.raw_weights = out.run.weights;
    out.trace = out.run.trace;
    return out;
}

NmfResult nmf_iw(const std::vector<Matrix>& views, int clusters, double p, std::uint64_t seed) {
    NmfConfig config;
    config.clusters = clusters;
    config.seed = seed;
    return nmf_multiview(views, WeightScheme::iw(p), config);
}

}  // namespace mvc
