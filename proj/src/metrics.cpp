#include "mvc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "mvc/error.hpp"

namespace mvc {

ClusterAssignment ClusterAssignment::from_labels(std::span<const int> labels) {
    ClusterAssignment out;
    out.labels.reserve(labels.size());
    std::unordered_map<int, int> ids;
    for (int label : labels) {
        if (label < 0) throw InvalidInput("cluster labels must be nonnegative");
        auto [it, inserted] = ids.try_emplace(label, out.num_clusters);
        if (inserted) ++out.num_clusters;
        out.labels.push_back(it->second);
    }
    return out;
}

Matrix ClusterAssignment::indicator() const {
    Matrix g = Matrix::Zero(static_cast<Eigen::Index>(labels.size()), num_clusters);
    for (std::size_t i = 0; i < labels.size(); ++i) g(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
    return g;
}

Matrix contingency(std::span<const int> pred, std::span<const int> truth) {
    if (pred.size() != truth.size()) {
        throw InvalidInput("label vectors differ in length: " + std::to_string(pred.size()) + " vs " +
                           std::to_string(truth.size()));
    }
    if (pred.empty()) throw InvalidInput("label vectors are empty");
    const ClusterAssignment p = ClusterAssignment::from_labels(pred);
    const ClusterAssignment t = ClusterAssignment::from_labels(truth);
    Matrix counts = Matrix::Zero(p.num_clusters, t.num_clusters);
    for (std::size_t i = 0; i < pred.size(); ++i) counts(p.labels[i], t.labels[i]) += 1.0;
    return counts;
}

double acc(std::span<const int> pred, std::span<const int> truth) {
    const Matrix counts = contingency(pred, truth);
    const Eigen::Index k = std::max(counts.rows(), counts.cols());
    Matrix cost = Matrix::Zero(k, k);
    cost.topLeftCorner(counts.rows(), counts.cols()) = -counts;
    const std::vector<int> perm = optimal_assignment(cost);
    return -assignment_cost(cost, perm) / static_cast<double>(pred.size());
}

double nmi(std::span<const int> pred, std::span<const int> truth) {
    const Matrix counts = contingency(pred, truth);
    const double n = static_cast<double>(pred.size());
    const Vector row = counts.rowwise().sum() / n;
    const Vector col = counts.colwise().sum().transpose() / n;

    auto entropy = [](const Vector& p) {
        double h = 0.0;
        for (Eigen::Index i = 0; i < p.size(); ++i)
            if (p(i) > 0.0) h -= p(i) * std::log(p(i));
        return h;
    };
    const double h_pred = entropy(row);
    const double h_truth = entropy(col);

    double mi = 0.0;
    for (Eigen::Index i = 0; i < counts.rows(); ++i) {
        for (Eigen::Index j = 0; j < counts.cols(); ++j) {
            const double pij = counts(i, j) / n;
            if (pij > 0.0) mi += pij * std::log(pij / (row(i) * col(j)));
        }
    }
    const double denom = 0.5 * (h_pred + h_truth);
    if (denom <= 0.0) return (counts.rows() == 1 && counts.cols() == 1) ? 1.0 : 0.0;
    return std::clamp(mi / denom, 0.0, 1.0);
}

double purity(std::span<const int> pred, std::span<const int> truth) {
    const Matrix counts = contingency(pred, truth);
    return counts.rowwise().maxCoeff().sum() / static_cast<double>(pred.size());
}

ClusteringScores evaluate(std::span<const int> pred, std::span<const int> truth) {
    return {acc(pred, truth), nmi(pred, truth), purity(pred, truth)};
}

}  // namespace mvc
