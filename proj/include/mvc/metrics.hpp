#pragma once

#include <span>
#include <vector>

#include "mvc/linalg.hpp"

namespace mvc {

/// Length-N label vector with labels in [0, num_clusters).
struct ClusterAssignment {
    std::vector<int> labels;
    int num_clusters = 0;

    /// Relabels arbitrary nonnegative ids to 0..C-1 in order of first appearance.
    static ClusterAssignment from_labels(std::span<const int> labels);

    /// The N x C one-hot indicator matrix G.
    Matrix indicator() const;
};

/// Best-permutation accuracy: the confusion matrix is padded to square and
/// matched with the Hungarian method.
double acc(std::span<const int> pred, std::span<const int> truth);

/// Mutual information over the arithmetic mean of the two entropies.
/// Two single-cluster partitions score 1; any other zero-entropy case scores 0.
double nmi(std::span<const int> pred, std::span<const int> truth);

/// (1/N) sum over predicted clusters of the largest overlap with a true class.
double purity(std::span<const int> pred, std::span<const int> truth);

struct ClusteringScores {
    double acc = 0.0;
    double nmi = 0.0;
    double purity = 0.0;
    double sum() const { return acc + nmi + purity; }
};

ClusteringScores evaluate(std::span<const int> pred, std::span<const int> truth);

/// Contingency counts: rows are predicted clusters, columns true classes.
Matrix contingency(std::span<const int> pred, std::span<const int> truth);

}  // namespace mvc
