#include "mvc/clr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mvc/error.hpp"

namespace mvc {

void ClrConfig::validate() const {
    if (clusters < 2) throw InvalidInput("CLR needs at least 2 clusters");
    if (t < 1) throw InvalidInput("CLR row support t must be >= 1");
    if (lambda0 && !(*lambda0 > 0.0)) throw InvalidInput("CLR lambda0 must be > 0");
    if (max_inner < 1 || max_adapt < 0) throw InvalidInput("CLR iteration caps must be positive");
}

std::vector<int> select_support(const Eigen::Ref<const Vector>& target, int t, int exclude) {
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(target.size()));
    for (int j = 0; j < target.size(); ++j)
        if (j != exclude) idx.push_back(j);
    const auto keep = std::min<std::size_t>(static_cast<std::size_t>(std::max(t, 0)), idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(keep), idx.end(),
                      [&](int a, int b) { return target(a) > target(b) || (target(a) == target(b) && a < b); });
    idx.resize(keep);
    return idx;
}

namespace {

Vector project_on_support(const Eigen::Ref<const Vector>& target, std::span<const int> support) {
    Vector restricted(static_cast<Eigen::Index>(support.size()));
    for (std::size_t k = 0; k < support.size(); ++k) restricted(static_cast<Eigen::Index>(k)) = target(support[k]);
    const Vector projected = project_to_simplex(restricted);
    Vector row = Vector::Zero(target.size());
    for (std::size_t k = 0; k < support.size(); ++k) row(support[k]) = projected(static_cast<Eigen::Index>(k));
    return row;
}

// Squared Euclidean distances between the rows of F.
Matrix embedding_distances(const Matrix& f) {
    const Vector sq = f.rowwise().squaredNorm();
    Matrix d = (-2.0 * f * f.transpose()).colwise() + sq;
    d.rowwise() += sq.transpose();
    return d.cwiseMax(0.0);
}

Vector normalized_alpha(const Vector& alpha, std::size_t views) {
    if (alpha.size() != static_cast<Eigen::Index>(views)) {
        throw InvalidInput("CLR: got " + std::to_string(alpha.size()) + " weights for " +
                           std::to_string(views) + " views");
    }
    if (!alpha.allFinite() || alpha.minCoeff() < 0.0 || !(alpha.sum() > 0.0)) {
        throw InvalidInput("CLR: weights must be nonnegative and not all zero");
    }
    return alpha / alpha.sum();
}

void validate_views(const std::vector<Matrix>& views) {
    if (views.empty()) throw InvalidInput("CLR: no views");
    const Eigen::Index n = views.front().rows();
    for (std::size_t v = 0; v < views.size(); ++v) {
        const Matrix& a = views[v];
        if (a.rows() != a.cols() || a.rows() != n) {
            throw InvalidInput("CLR: view " + std::to_string(v) + " is " + std::to_string(a.rows()) + "x" +
                               std::to_string(a.cols()) + ", expected " + std::to_string(n) + "x" +
                               std::to_string(n));
        }
        if (!a.allFinite() || a.minCoeff() < 0.0) {
            throw InvalidInput("CLR: view " + std::to_string(v) + " must be finite and nonnegative");
        }
    }
}

double default_lambda(const std::vector<Matrix>& views) {
    double total = 0.0;
    for (const Matrix& a : views) total += a.squaredNorm() / static_cast<double>(a.rows());
    const double lambda = total / static_cast<double>(views.size());
    return lambda > 0.0 ? lambda : 1.0;
}

}  // namespace

Vector update_row(const Matrix& a_rows, const Vector& alpha, const Eigen::Ref<const Vector>& v_row,
                  double lambda, std::span<const int> support) {
    if (a_rows.rows() != alpha.size()) throw InvalidInput("update_row: one weight per view row required");
    if (a_rows.cols() != v_row.size()) throw InvalidInput("update_row: row length mismatch");
    if (support.empty()) throw InvalidInput("update_row: empty support");
    const double alpha_sum = alpha.sum();
    if (!(alpha_sum > 0.0)) throw InvalidInput("update_row: weights must have a positive sum");
    for (int j : support)
        if (j < 0 || j >= v_row.size()) throw InvalidInput("update_row: support index out of range");

    const Vector target = (a_rows.transpose() * alpha - 0.5 * lambda * v_row) / alpha_sum;
    return project_on_support(target, support);
}

double clr_penalized_objective(const std::vector<Matrix>& views, const Vector& alpha, const Matrix& s,
                               const Matrix& f, double lambda) {
    const Vector a = normalized_alpha(alpha, views.size());
    double fit = 0.0;
    for (std::size_t v = 0; v < views.size(); ++v) fit += a(static_cast<Eigen::Index>(v)) * (s - views[v]).squaredNorm();
    const Matrix l = laplacian_of(s);
    return fit + 2.0 * lambda * (f.transpose() * l * f).trace();
}

ClrState clr_weighted_subproblem(const std::vector<Matrix>& views, const Vector& alpha,
                                 const ClrConfig& config, const Matrix& warm_start,
                                 std::optional<double> lambda_start) {
    config.validate();
    validate_views(views);
    const Vector a = normalized_alpha(alpha, views.size());
    const Eigen::Index n = views.front().rows();
    const int c = config.clusters;
    if (c > n) throw InvalidInput("CLR: more clusters than samples");
    if (warm_start.rows() != n || warm_start.cols() != n) throw InvalidInput("CLR: warm start has the wrong shape");

    Matrix base = Matrix::Zero(n, n);
    double const_fit = 0.0;
    for (std::size_t v = 0; v < views.size(); ++v) {
        const double w = a(static_cast<Eigen::Index>(v));
        base += w * views[v];
        const_fit += w * views[v].squaredNorm();
    }

    double lambda = lambda_start ? *lambda_start : (config.lambda0 ? *config.lambda0 : default_lambda(views));
    if (!(lambda > 0.0)) throw InvalidInput("CLR: lambda must be > 0");

    ClrState state;
    Matrix s = warm_start;
    const int want_vectors = static_cast<int>(std::min<Eigen::Index>(c + 1, n));

    for (int adapt = 0; adapt <= config.max_adapt; ++adapt) {
        double prev = 0.0;
        for (int it = 0; it < config.max_inner; ++it) {
            // F-step: C smallest eigenvectors of L_S.
            const EigenPairs eig = smallest_eigenpairs(laplacian_of(s), c);
            const Matrix dist = embedding_distances(eig.vectors);

            // S-step: row-wise simplex projection of the penalized target on its top-t support.
            Matrix next = Matrix::Zero(n, n);
            for (Eigen::Index i = 0; i < n; ++i) {
                const Vector target = base.row(i).transpose() - 0.5 * lambda * dist.row(i).transpose();
                const std::vector<int> support = select_support(target, config.t, static_cast<int>(i));
                next.row(i) = project_on_support(target, support).transpose();
            }
            s = std::move(next);

            // sum_v a_v ||S - A_v||^2 + 2 lambda Tr(F^T L_S F), where 2 Tr(F^T L_S F) = sum_ij s_ij d_ij.
            const double fit = s.squaredNorm() - 2.0 * s.cwiseProduct(base).sum() + const_fit;
            const double objective = fit + lambda * s.cwiseProduct(dist).sum();
            state.inner_trace.push_back(objective);
            state.inner_lambda.push_back(lambda);
            ++state.inner_iterations;
            if (it > 0 && std::abs(prev - objective) <= config.inner_tol * std::max(std::abs(prev), 1e-300)) break;
            prev = objective;
        }

        const Matrix l = laplacian_of(s);
        Eigen::SelfAdjointEigenSolver<Matrix> solver(l);
        if (solver.info() != Eigen::Success) {
            throw SolverError("CLR: eigen-solve failed after " + std::to_string(adapt) + " adaptations", adapt);
        }
        const Vector& values = solver.eigenvalues();
        const double lambda_max = std::max(values(n - 1), 0.0);
        const double zero_tol = config.zero_eig_rel_tol * lambda_max;
        const int zeros = static_cast<int>((values.array() < zero_tol).count());
        const Components comps = connected_components(s, config.edge_eps);

        state.adaptations = adapt;
        state.lambda = lambda;
        state.zero_eigenvalues = zeros;
        state.component_count = comps.count;
        if (zeros == c && comps.count == c) {
            state.S = std::move(s);
            state.F = solver.eigenvectors().leftCols(c);
            state.eigenvalues = values.head(want_vectors);
            state.lambda_max = lambda_max;
            state.labels = comps.labels;
            return state;
        }
        // Too few components: push harder on the rank penalty; too many: relax it.
        const int count = zeros != c ? zeros : comps.count;
        if (count < c) {
            lambda *= 2.0;
        } else {
            lambda *= 0.5;
        }
    }
    throw SolverError("CLR: no " + std::to_string(c) + "-component solution within " +
                          std::to_string(config.max_adapt) + " lambda adaptations (last count " +
                          std::to_string(state.component_count) + ")",
                      config.max_adapt, state.component_count);
}

ClrSingleResult clr_single(const Matrix& a, const ClrConfig& config) {
    std::vector<Matrix> views{a};
    ClrState state = clr_weighted_subproblem(views, Vector::Ones(1), config, a);
    ClrSingleResult out;
    out.S = state.S;
    out.labels = state.labels;
    out.state = std::move(state);
    return out;
}

ClrLearner::ClrLearner(std::vector<Matrix> views, ClrConfig config)
    : views_(std::move(views)), config_(std::move(config)) {
    config_.validate();
    validate_views(views_);
}

ClrState ClrLearner::solve_weighted(const Vector& coeffs, const State* warm) {
    if (warm != nullptr) {
        return clr_weighted_subproblem(views_, coeffs, config_, warm->S, warm->lambda);
    }
    const Vector a = normalized_alpha(coeffs, views_.size());
    Matrix start = Matrix::Zero(views_.front().rows(), views_.front().cols());
    for (std::size_t v = 0; v < views_.size(); ++v) start += a(static_cast<Eigen::Index>(v)) * views_[v];
    return clr_weighted_subproblem(views_, coeffs, config_, start);
}

Vector ClrLearner::per_view_losses(const State& state) const {
    Vector phi(static_cast<Eigen::Index>(views_.size()));
    for (std::size_t v = 0; v < views_.size(); ++v) phi(static_cast<Eigen::Index>(v)) = (state.S - views_[v]).squaredNorm();
    return phi;
}

ClrMultiviewResult clr_multiview(const std::vector<Matrix>& views, const WeightScheme& scheme,
                                 const ClrConfig& config, const AlternatingConfig& alternating) {
    ClrLearner learner(views, config);
    AlternatingResult<ClrState> run = run_alternating(learner, scheme, alternating);
    ClrMultiviewResult out;
    out.S = run.state.S;
    out.labels = run.state.labels;
    out.weights = run.normalized_weights;
    out.raw_weights = run.weights;
    out.trace = run.trace;
    out.run = std::move(run);
    return out;
}

}  // namespace mvc
