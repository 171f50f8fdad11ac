#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mvc/error.hpp"
#include "mvc/weights.hpp"

namespace mvc {

/// A single/weighted-view clustering learner the alternating driver can use.
///
/// solve_weighted(c, warm) minimizes sum_v c_v Phi_v(x), optionally starting
/// from a previous state; per_view_losses(x) returns [Phi_1(x), ..., Phi_M(x)].
template <class L>
concept WeightedLearner = requires(L& learner, const Vector& coeffs, const typename L::State* warm,
                                   const typename L::State& state) {
    typename L::State;
    { learner.view_count() } -> std::convertible_to<int>;
    { learner.solve_weighted(coeffs, warm) } -> std::same_as<typename L::State>;
    { learner.per_view_losses(state) } -> std::convertible_to<Vector>;
};

struct AlternatingConfig {
    int max_outer = 50;
    double tol = 1e-6;  ///< relative change of the scheme objective
    std::optional<Vector> init_weights;  ///< defaults to 1/M
    /// Divide Phi by max(Phi) before the IW update. Off by default; the
    /// subproblem argmin does not depend on a common rescaling of the weights.
    bool normalize_phi = false;
    double eps_phi = kDefaultEpsPhi;
    /// Keep the previous state when the new one has a larger weighted
    /// objective sum_v c_v Phi_v. Needed for descent with non-convex learners.
    bool keep_better_state = true;
};

template <class State>
struct AlternatingResult {
    State state;
    WeightVector weights;             ///< last weights, in the scheme's own scale
    Vector normalized_weights;        ///< weights on the simplex, for reporting
    std::vector<double> trace;        ///< scheme objective after each outer iteration
    std::vector<Vector> weight_history;  ///< normalized weights used by each solve
    std::vector<Vector> loss_history;    ///< Phi(x) after each solve
    int iterations = 0;
    bool converged = false;
    bool degenerate = false;  ///< some Phi_v was clamped
    int kept_previous = 0;    ///< solves rejected by keep_better_state
    std::vector<std::string> warnings;
};

namespace detail {

inline double relative_change(double before, double after) {
    const double scale = std::max(std::abs(before), std::numeric_limits<double>::min());
    return std::abs(before - after) / scale;
}

}  // namespace detail

/// Alternates x <- argmin sum_v c_v Phi_v(x) with the scheme's weight update
/// until the scheme objective stalls (relative change < tol) or max_outer.
/// Starts from uniform weights. A single view needs only one solve.
template <WeightedLearner L>
AlternatingResult<typename L::State> run_alternating(L& learner, const WeightScheme& scheme,
                                                     const AlternatingConfig& config = {}) {
    using State = typename L::State;
    scheme.validate();
    const int m = learner.view_count();
    if (m < 1) throw InvalidInput("run_alternating: no views");
    if (config.max_outer < 1) throw InvalidInput("run_alternating: max_outer must be >= 1");

    WeightVector weights;
    if (config.init_weights) {
        if (config.init_weights->size() != m || config.init_weights->minCoeff() < 0.0 ||
            !(config.init_weights->sum() > 0.0)) {
            throw InvalidInput("run_alternating: init_weights must be M nonnegative values, not all zero");
        }
        weights.values = *config.init_weights;
    } else {
        weights.values = Vector::Constant(m, 1.0 / m);
    }
    weights.normalized = std::abs(weights.values.sum() - 1.0) < 1e-12;

    const double slack = 10.0 * std::numeric_limits<double>::epsilon();
    std::optional<State> current;
    AlternatingResult<State> result{};
    for (int outer = 0; outer < config.max_outer; ++outer) {
        const Vector coeffs = subproblem_coefficients(scheme, weights);
        State next = [&] {
            try {
                return learner.solve_weighted(coeffs, current ? &*current : nullptr);
            } catch (const SolverError& e) {
                throw SolverError("outer iteration " + std::to_string(outer) + ": " + e.what(), outer,
                                  e.component_count());
            }
        }();

        Vector phi = learner.per_view_losses(next);
        if (config.keep_better_state && current) {
            const Vector phi_prev = learner.per_view_losses(*current);
            if (coeffs.dot(phi) > coeffs.dot(phi_prev)) {
                next = *current;
                phi = phi_prev;
                ++result.kept_previous;
            }
        }
        validate_objective(phi);
        result.weight_history.push_back(weights.normalized_values());
        result.loss_history.push_back(phi);
        current = std::move(next);

        Vector phi_for_update = phi;
        if (config.normalize_phi && scheme.kind == SchemeKind::IW && phi.maxCoeff() > 0.0) {
            phi_for_update /= phi.maxCoeff();
        }
        weights = update_weights(scheme, phi_for_update, config.eps_phi);
        result.degenerate = result.degenerate || weights.degenerate;

        const double objective = scheme_objective(scheme, phi, weights);
        if (!result.trace.empty()) {
            const double prev = result.trace.back();
            if (objective > prev + slack * std::max(1.0, std::abs(prev))) {
                result.warnings.push_back("objective increased at outer iteration " +
                                          std::to_string(outer) + ": " + std::to_string(prev) +
                                          " -> " + std::to_string(objective));
            }
        }
        result.trace.push_back(objective);
        result.iterations = outer + 1;

        if (m == 1) {
            result.converged = true;
            break;
        }
        if (result.trace.size() > 1 &&
            detail::relative_change(result.trace[result.trace.size() - 2], objective) < config.tol) {
            result.converged = true;
            break;
        }
    }

    result.state = std::move(*current);
    result.weights = weights;
    result.normalized_weights = weights.normalized_values();
    return result;
}

}  // namespace mvc
