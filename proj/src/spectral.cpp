#include "mvc/spectral.hpp"

#include <algorithm>
#include <limits>

#include "mvc/error.hpp"
#include "mvc/graph.hpp"
#include "mvc/random.hpp"

namespace mvc {

namespace {

KMeansResult kmeans_once(const Matrix& x, int k, Rng& rng, int max_iter) {
    const Eigen::Index n = x.rows();
    Matrix centers(k, x.cols());

    // k-means++ seeding
    centers.row(0) = x.row(rng.index(static_cast<int>(n)));
    Vector closest = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
    for (int c = 1; c < k; ++c) {
        const double total = closest.sum();
        Eigen::Index pick = 0;
        if (total > 0.0) {
            double r = rng.uniform() * total;
            for (pick = 0; pick < n - 1; ++pick) {
                r -= closest(pick);
                if (r < 0.0) break;
            }
        } else {
            pick = rng.index(static_cast<int>(n));
        }
        centers.row(c) = x.row(pick);
        closest = closest.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
    }

    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    Vector best_dist(n);
    for (int iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            Eigen::Index c = 0;
            best_dist(i) = (centers.rowwise() - x.row(i)).rowwise().squaredNorm().minCoeff(&c);
            if (labels[i] != static_cast<int>(c)) {
                labels[i] = static_cast<int>(c);
                changed = true;
            }
        }
        if (!changed && iter > 0) break;

        Matrix sums = Matrix::Zero(k, x.cols());
        std::vector<int> sizes(static_cast<std::size_t>(k), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            sums.row(labels[i]) += x.row(i);
            ++sizes[labels[i]];
        }
        for (int c = 0; c < k; ++c) {
            if (sizes[c] > 0) {
                centers.row(c) = sums.row(c) / sizes[c];
            } else {
                // reseed an empty cluster at the worst-fit point
                Eigen::Index far = 0;
                best_dist.maxCoeff(&far);
                centers.row(c) = x.row(far);
                best_dist(far) = 0.0;
            }
        }
    }
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) inertia += (x.row(i) - centers.row(labels[i])).squaredNorm();
    return {std::move(labels), std::move(centers), inertia};
}

}  // namespace

KMeansResult kmeans(const Matrix& points, int k, int restarts, std::uint64_t seed, int max_iter) {
    if (k < 1 || k > points.rows()) throw InvalidInput("kmeans: need 1 <= k <= N");
    if (restarts < 1) throw InvalidInput("kmeans: restarts must be >= 1");
    Rng rng(seed);
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        KMeansResult run = kmeans_once(points, k, rng, max_iter);
        if (run.inertia < best.inertia) best = std::move(run);
    }
    return best;
}

ScLearner::ScLearner(const std::vector<Matrix>& views, ScConfig config) : config_(config) {
    if (views.empty()) throw InvalidInput("SC: no views");
    if (config_.clusters < 2) throw InvalidInput("SC: need at least 2 clusters");
    const Eigen::Index n = views.front().rows();
    if (config_.clusters > n) throw InvalidInput("SC: more clusters than samples");
    Matrix union_graph = Matrix::Zero(n, n);
    for (const Matrix& w : views) {
        if (w.rows() != n || w.cols() != n) throw InvalidInput("SC: views must be N x N with a common N");
        if (!w.allFinite() || w.minCoeff() < 0.0) throw InvalidInput("SC: views must be nonnegative");
        const Matrix sym = 0.5 * (w + w.transpose());
        laplacians_.push_back(laplacian_of(sym));
        degrees_.push_back(sym.rowwise().sum());
        union_graph += sym;
    }
    union_components_ = connected_components(union_graph, config_.edge_eps).count;
}

ScState ScLearner::solve_weighted(const Vector& coeffs, const State* /*warm*/) {
    if (coeffs.size() != view_count()) throw InvalidInput("SC: one coefficient per view required");
    const Eigen::Index n = laplacians_.front().rows();
    Matrix l = Matrix::Zero(n, n);
    for (int v = 0; v < view_count(); ++v) l += coeffs(v) * laplacians_[v];

    ScState state;
    if (config_.cut == CutType::Ratio) {
        EigenPairs eig = smallest_eigenpairs(l, config_.clusters);
        state.G = std::move(eig.vectors);
        state.eigenvalues = std::move(eig.values);
        return state;
    }

    Vector degree = Vector::Zero(n);
    for (int v = 0; v < view_count(); ++v) degree += coeffs(v) * degrees_[v];
    if (!(degree.minCoeff() > 0.0)) {
        throw InvalidInput("SC normalized cut: every vertex needs a positive weighted degree");
    }
    const Matrix d = degree.asDiagonal();
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(0.5 * (l + l.transpose()), d);
    if (solver.info() != Eigen::Success) throw SolverError("SC normalized cut: generalized eigen-solve failed");
    state.G = solver.eigenvectors().leftCols(config_.clusters);
    state.eigenvalues = solver.eigenvalues().head(config_.clusters);
    return state;
}

Vector ScLearner::per_view_losses(const State& state) const {
    Vector phi(view_count());
    for (int v = 0; v < view_count(); ++v) {
        phi(v) = std::max(0.0, (state.G.transpose() * laplacians_[v] * state.G).trace());
    }
    return phi;
}

ScResult sc_multiview(const std::vector<Matrix>& views, const WeightScheme& scheme, const ScConfig& config,
                      const AlternatingConfig& alternating) {
    ScLearner learner(views, config);
    ScResult out;
    if (learner.union_components() > config.clusters) {
        out.warnings.push_back("union graph has " + std::to_string(learner.union_components()) +
                               " connected components, more than the " + std::to_string(config.clusters) +
                               " requested clusters");
    }
    out.run = run_alternating(learner, scheme, alternating);
    out.G = out.run.state.G;
    out.labels = kmeans(out.G, config.clusters, config.kmeans_restarts, config.seed).labels;
    out.weights = out.run.normalized_weights;
    out.raw_weights = out.run.weights;
    out.trace = out.run.trace;
    out.warnings.insert(out.warnings.end(), out.run.warnings.begin(), out.run.warnings.end());
    return out;
}

ScResult sc_iw(const std::vector<Matrix>& views, int clusters, double p, CutType cut, std::uint64_t seed) {
    ScConfig config;
    config.clusters = clusters;
    config.cut = cut;
    config.seed = seed;
    return sc_multiview(views, WeightScheme::iw(p), config);
}

}  // namespace mvc
