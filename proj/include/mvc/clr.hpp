#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mvc/alternating.hpp"
#include "mvc/graph.hpp"
#include "mvc/weights.hpp"

namespace mvc {

struct ClrConfig {
    int clusters = 2;
    /// Initial penalty weight. Unset: mean over views of ||A_v||_F^2 / N.
    std::optional<double> lambda0;
    /// Row support size: each row keeps at most t nonzeros.
    int t = 10;
    int max_inner = 100;
    double inner_tol = 1e-6;
    /// An eigenvalue of L_S counts as zero below zero_eig_rel_tol * lambda_max(L_S).
    double zero_eig_rel_tol = 1e-8;
    /// lambda doublings/halvings before giving up.
    int max_adapt = 30;
    double edge_eps = 1e-8;

    void validate() const;
};

/// One iterate of the CLR alternation.
struct ClrState {
    Matrix S;                 ///< row-stochastic, zero diagonal, exactly `clusters` components
    Matrix F;                 ///< N x C spectral embedding of L_S
    Vector eigenvalues;       ///< C + 1 smallest eigenvalues of L_S (fewer when N = C)
    double lambda_max = 0.0;  ///< largest eigenvalue of L_S
    double lambda = 0.0;      ///< penalty weight at termination
    int component_count = 0;  ///< union-find count on S
    int zero_eigenvalues = 0; ///< eigenvalues of L_S below zero_eig_rel_tol * lambda_max
    std::vector<int> labels;
    int inner_iterations = 0;
    int adaptations = 0;
    /// Penalized objective after every S-step, with the lambda it was computed under.
    std::vector<double> inner_trace;
    std::vector<double> inner_lambda;
};

/// Top-t indices of `target`, skipping `exclude` (the row's own index).
/// Ties resolve to the lower index.
std::vector<int> select_support(const Eigen::Ref<const Vector>& target, int t, int exclude);

/// Exact minimizer of sum_v alpha_v ||s - a_v||^2 + lambda <v_row, s> over
/// simplex rows supported on `support`:
///   s|support = project((sum_v alpha_v a_v - (lambda/2) v_row) / sum_v alpha_v).
/// `a_rows` holds one view's row per matrix row (M x N).
Vector update_row(const Matrix& a_rows, const Vector& alpha, const Eigen::Ref<const Vector>& v_row,
                  double lambda, std::span<const int> support);

/// Solves the weighted subproblem min sum_v alpha_v ||S - A_v||_F^2 subject to
/// rank(L_S) = N - C by the penalized F/S alternation with lambda adaptation.
///
/// The weights are normalized internally, so lambda is relative to sum_v alpha_v
/// and rescaling alpha leaves S unchanged. Throws SolverError when the
/// adaptation budget runs out before S has exactly C components.
ClrState clr_weighted_subproblem(const std::vector<Matrix>& views, const Vector& alpha,
                                 const ClrConfig& config, const Matrix& warm_start,
                                 std::optional<double> lambda_start = std::nullopt);

struct ClrSingleResult {
    Matrix S;
    std::vector<int> labels;
    ClrState state;
};

/// Single-view CLR: nearest row-stochastic S to A with exactly C components.
ClrSingleResult clr_single(const Matrix& a, const ClrConfig& config);

/// Adapter exposing the CLR subproblem to run_alternating, with
/// Phi_v(S) = ||S - A_v||_F^2.
class ClrLearner {
public:
    using State = ClrState;

    ClrLearner(std::vector<Matrix> views, ClrConfig config);

    int view_count() const { return static_cast<int>(views_.size()); }
    State solve_weighted(const Vector& coeffs, const State* warm);
    Vector per_view_losses(const State& state) const;

    const std::vector<Matrix>& views() const { return views_; }

private:
    std::vector<Matrix> views_;
    ClrConfig config_;
};

struct ClrMultiviewResult {
    Matrix S;
    std::vector<int> labels;
    Vector weights;  ///< normalized
    WeightVector raw_weights;
    std::vector<double> trace;
    AlternatingResult<ClrState> run;
};

/// Multi-view CLR under any weight scheme (CLR-IW, -NR, -ER, -EF, equal).
ClrMultiviewResult clr_multiview(const std::vector<Matrix>& views, const WeightScheme& scheme,
                                 const ClrConfig& config, const AlternatingConfig& alternating = {});

/// Sum_v alpha_v ||S - A_v||^2 + 2 lambda Tr(F^T L_S F), alpha normalized.
double clr_penalized_objective(const std::vector<Matrix>& views, const Vector& alpha, const Matrix& s,
                               const Matrix& f, double lambda);

}  // namespace mvc
