#include "mvc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mvc/error.hpp"

namespace mvc {

Vector WeightVector::normalized_values() const {
    if (normalized) return values;
    const double total = values.sum();
    if (!(total > 0.0)) throw InvalidInput("weights sum to zero, cannot normalize");
    return values / total;
}

void validate_objective(const Vector& phi) {
    if (phi.size() == 0) throw InvalidInput("objective vector is empty");
    if (!phi.allFinite()) throw InvalidInput("objective vector has non-finite entries");
    if (phi.minCoeff() < 0.0) throw InvalidInput("objective vector has negative entries");
}

void WeightScheme::validate() const {
    switch (kind) {
        case SchemeKind::IW:
            if (!(hyper > 0.0 && hyper <= 2.0)) throw InvalidInput("IW needs 0 < p <= 2, got " + name());
            break;
        case SchemeKind::NR:
            if (!(hyper >= 0.0)) throw InvalidInput("NR needs gamma1 >= 0, got " + name());
            break;
        case SchemeKind::ER:
            if (!(hyper > 0.0)) throw InvalidInput("ER needs gamma2 > 0, got " + name());
            break;
        case SchemeKind::EF:
            if (!(hyper > 1.0)) throw InvalidInput("EF needs gamma3 > 1, got " + name());
            break;
        case SchemeKind::Equal:
            break;
    }
}

std::string WeightScheme::name() const {
    std::ostringstream out;
    out << scheme_kind_name(kind);
    if (kind != SchemeKind::Equal) out << "(" << hyper << ")";
    return out.str();
}

SchemeKind parse_scheme_kind(std::string_view name) {
    if (name == "iw") return SchemeKind::IW;
    if (name == "nr") return SchemeKind::NR;
    if (name == "er") return SchemeKind::ER;
    if (name == "ef") return SchemeKind::EF;
    if (name == "equal") return SchemeKind::Equal;
    throw InvalidInput("unknown weight scheme '" + std::string(name) + "'");
}

std::string_view scheme_kind_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::IW: return "iw";
        case SchemeKind::NR: return "nr";
        case SchemeKind::ER: return "er";
        case SchemeKind::EF: return "ef";
        case SchemeKind::Equal: return "equal";
    }
    return "?";
}

std::vector<double> preset_grid(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::NR:
        case SchemeKind::ER: return {1, 5, 10, 50, 100, 500, 1000};
        case SchemeKind::EF: return {1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
        case SchemeKind::IW: return {0.1, 0.4, 0.7, 1.0, 1.3, 1.7};
        case SchemeKind::Equal: return {0.0};
    }
    return {};
}

namespace {

// Clamp losses below eps to eps; reports whether anything was clamped.
Vector clamp_losses(const Vector& phi, double eps, bool& clamped) {
    clamped = (phi.array() <= eps).any();
    return phi.cwiseMax(eps);
}

// alpha_v proportional to phi_v^exponent, normalized in the log domain.
Vector normalized_power(const Vector& phi, double exponent) {
    const Vector logw = exponent * phi.array().log().matrix();
    const Vector w = (logw.array() - logw.maxCoeff()).exp().matrix();
    return w / w.sum();
}

}  // namespace

WeightVector iw_update(const Vector& phi, double p, double eps_phi) {
    validate_objective(phi);
    if (!(p > 0.0 && p <= 2.0)) throw InvalidInput("iw_update: p must lie in (0, 2]");
    WeightVector out;
    if (p == 2.0) {
        out.values = Vector::Ones(phi.size());
        return out;
    }
    const Vector safe = clamp_losses(phi, eps_phi, out.degenerate);
    out.values = (0.5 * p) * safe.array().pow(0.5 * (p - 2.0)).matrix();
    return out;
}

WeightVector iw_normalized(const Vector& phi, double p, double eps_phi) {
    validate_objective(phi);
    if (!(p > 0.0 && p <= 2.0)) throw InvalidInput("iw_normalized: p must lie in (0, 2]");
    WeightVector out;
    out.normalized = true;
    if (p == 2.0) {
        out.values = Vector::Constant(phi.size(), 1.0 / static_cast<double>(phi.size()));
        return out;
    }
    const Vector safe = clamp_losses(phi, eps_phi, out.degenerate);
    out.values = normalized_power(safe, 0.5 * (p - 2.0));
    return out;
}

WeightVector nr_update(const Vector& phi, double gamma1) {
    validate_objective(phi);
    if (!(gamma1 >= 0.0)) throw InvalidInput("nr_update: gamma1 must be >= 0");
    WeightVector out;
    out.normalized = true;
    if (gamma1 == 0.0) {
        Eigen::Index best = 0;
        phi.minCoeff(&best);  // first minimum
        out.values = Vector::Zero(phi.size());
        out.values(best) = 1.0;
        return out;
    }
    out.values = project_to_simplex(-phi / (2.0 * gamma1));
    return out;
}

WeightVector er_update(const Vector& phi, double gamma2) {
    validate_objective(phi);
    if (!(gamma2 > 0.0)) throw InvalidInput("er_update: gamma2 must be > 0");
    const Vector w = (-(phi.array() - phi.minCoeff()) / gamma2).exp().matrix();
    return {w / w.sum(), true, false};
}

WeightVector ef_update(const Vector& phi, double gamma3, double eps_phi) {
    validate_objective(phi);
    if (!(gamma3 > 1.0)) throw InvalidInput("ef_update: gamma3 must be > 1");
    WeightVector out;
    out.normalized = true;
    const Vector safe = clamp_losses(phi, eps_phi, out.degenerate);
    out.values = normalized_power(safe, -1.0 / (gamma3 - 1.0));
    return out;
}

double sharpest_p(double phi_min) {
    if (!(phi_min > 0.0 && phi_min < 1.0)) {
        throw InvalidInput("sharpest_p: phi_min must lie in (0, 1)");
    }
    return std::min(2.0, -2.0 / std::log(phi_min));
}

WeightVector update_weights(const WeightScheme& scheme, const Vector& phi, double eps_phi) {
    switch (scheme.kind) {
        case SchemeKind::IW: return iw_update(phi, scheme.hyper, eps_phi);
        case SchemeKind::NR: return nr_update(phi, scheme.hyper);
        case SchemeKind::ER: return er_update(phi, scheme.hyper);
        case SchemeKind::EF: return ef_update(phi, scheme.hyper, eps_phi);
        case SchemeKind::Equal:
            validate_objective(phi);
            return {Vector::Constant(phi.size(), 1.0 / static_cast<double>(phi.size())), true, false};
    }
    throw InvalidInput("update_weights: unknown scheme");
}

Vector subproblem_coefficients(const WeightScheme& scheme, const WeightVector& weights) {
    if (scheme.kind == SchemeKind::EF) return weights.values.array().pow(scheme.hyper).matrix();
    return weights.values;
}

double scheme_objective(const WeightScheme& scheme, const Vector& phi, const WeightVector& weights) {
    const Vector& a = weights.values;
    switch (scheme.kind) {
        case SchemeKind::IW: return phi.array().pow(0.5 * scheme.hyper).sum();
        case SchemeKind::NR: return a.dot(phi) + scheme.hyper * a.squaredNorm();
        case SchemeKind::ER: {
            double entropy_term = 0.0;
            for (Eigen::Index v = 0; v < a.size(); ++v)
                if (a(v) > 0.0) entropy_term += a(v) * std::log(a(v));
            return a.dot(phi) + scheme.hyper * entropy_term;
        }
        case SchemeKind::EF: return a.array().pow(scheme.hyper).matrix().dot(phi);
        case SchemeKind::Equal: return phi.mean();
    }
    return 0.0;
}

double weight_std(const Vector& w) {
    if (w.size() == 0) return 0.0;
    const double mean = w.mean();
    return std::sqrt((w.array() - mean).square().mean());
}

}  // namespace mvc
