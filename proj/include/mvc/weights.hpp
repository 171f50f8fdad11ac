#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mvc/linalg.hpp"

namespace mvc {

/// Floor applied to per-view losses before raising them to a negative power.
inline constexpr double kDefaultEpsPhi = 1e-12;

/// Per-view weights. Raw intrinsic weights are unnormalized; every other
/// scheme returns a point on the simplex.
struct WeightVector {
    Vector values;
    bool normalized = false;
    /// Set when a zero loss had to be clamped to eps_phi.
    bool degenerate = false;

    Vector normalized_values() const;
};

/// Per-view losses Phi_v(x) >= 0. Throws InvalidInput on negative or
/// non-finite entries, or an empty vector.
void validate_objective(const Vector& phi);

enum class SchemeKind { IW, NR, ER, EF, Equal };

struct WeightScheme {
    SchemeKind kind = SchemeKind::IW;
    double hyper = 1.0;  ///< p, gamma1, gamma2, gamma3; unused for Equal

    static WeightScheme iw(double p) { return {SchemeKind::IW, p}; }
    static WeightScheme nr(double gamma1) { return {SchemeKind::NR, gamma1}; }
    static WeightScheme er(double gamma2) { return {SchemeKind::ER, gamma2}; }
    static WeightScheme ef(double gamma3) { return {SchemeKind::EF, gamma3}; }
    static WeightScheme equal() { return {SchemeKind::Equal, 0.0}; }

    /// IW: 0 < p <= 2; NR: gamma1 >= 0; ER: gamma2 > 0; EF: gamma3 > 1.
    void validate() const;
    std::string name() const;
};

SchemeKind parse_scheme_kind(std::string_view name);
std::string_view scheme_kind_name(SchemeKind kind);

/// Hyper-parameter grid used in the weight-scheme comparison.
std::vector<double> preset_grid(SchemeKind kind);

/// alpha_v = (p/2) Phi_v^((p-2)/2). Zero losses are clamped to eps_phi when
/// p < 2 and the result is flagged degenerate.
WeightVector iw_update(const Vector& phi, double p, double eps_phi = kDefaultEpsPhi);

/// iw_update rescaled onto the simplex: alpha_v proportional to Phi_v^((p-2)/2).
/// p = 2 gives uniform weights.
WeightVector iw_normalized(const Vector& phi, double p, double eps_phi = kDefaultEpsPhi);

/// Projection of -phi / (2 gamma1) onto the simplex. gamma1 = 0 returns the
/// one-hot weight on the smallest loss (lowest index on ties).
WeightVector nr_update(const Vector& phi, double gamma1);

/// Gibbs weights alpha_v proportional to exp(-Phi_v / gamma2), max-shifted.
WeightVector er_update(const Vector& phi, double gamma2);

/// alpha_v = 1 / sum_u (Phi_v / Phi_u)^(1/(gamma3-1)).
WeightVector ef_update(const Vector& phi, double gamma3, double eps_phi = kDefaultEpsPhi);

/// -2 / ln(phi_min), clipped to (0, 2]. Requires 0 < phi_min < 1.
double sharpest_p(double phi_min);

/// Weight update for any scheme. IW returns raw weights.
WeightVector update_weights(const WeightScheme& scheme, const Vector& phi,
                            double eps_phi = kDefaultEpsPhi);

/// Coefficients c_v the weighted subproblem min_x sum_v c_v Phi_v(x) uses for
/// the given weights. Equal to the weights except for EF, where c_v = alpha_v^gamma3.
Vector subproblem_coefficients(const WeightScheme& scheme, const WeightVector& weights);

/// Full objective of the scheme at (x, alpha), given Phi(x):
///   IW    sum_v Phi_v^(p/2)
///   NR    sum_v alpha_v Phi_v + gamma1 ||alpha||^2
///   ER    sum_v alpha_v Phi_v + gamma2 alpha_v log alpha_v
///   EF    sum_v alpha_v^gamma3 Phi_v
///   Equal (1/M) sum_v Phi_v
double scheme_objective(const WeightScheme& scheme, const Vector& phi, const WeightVector& weights);

/// Population standard deviation of the normalized weights.
double weight_std(const Vector& normalized_weights);

}  // namespace mvc
