#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mvc/data.hpp"
#include "mvc/metrics.hpp"
#include "mvc/weights.hpp"

namespace mvc::cli {

struct RunOptions {
    std::string method = "clr";  ///< clr, sc-rc, sc-nc or nmf
    WeightScheme scheme = WeightScheme::iw(1.0);
    std::optional<int> clusters;  ///< defaults to the dataset's
    std::uint64_t seed = 0;
    int knn = 20;
    int t = 10;
};

struct RunReport {
    std::string method;
    WeightScheme scheme;
    std::uint64_t seed = 0;
    int iterations = 0;
    std::vector<double> trace;
    Vector weights;  ///< normalized
    std::optional<ClusteringScores> scores;
    double wall_ms = 0.0;
    std::vector<int> labels;
    std::vector<std::string> warnings;
};

/// Validates `method` and throws InvalidInput otherwise.
void check_method(const std::string& method);

/// Runs one method/scheme pair on a dataset. Feature views are turned into
/// kNN graphs for the graph methods; nmf needs feature views.
RunReport run_method(const MultiViewDataset& dataset, const RunOptions& options);

/// key=value lines: method, scheme, hyper, seed, iters, objective_trace,
/// weights, acc, nmi, purity, wall_ms.
std::string format_report(const RunReport& report);

/// "paper" or a comma-separated list of values.
std::vector<double> parse_grid(const std::string& text, SchemeKind kind);

struct GridPoint {
    double hyper = 0.0;
    std::vector<RunReport> runs;  ///< one per seed
    ClusteringScores mean;
    double weight_std = 0.0;      ///< mean over seeds
};

struct GridSummary {
    std::vector<GridPoint> points;
    int best = 0;  ///< index of the largest mean ACC + NMI + Purity
};

/// Runs every (hyper, seed) pair, `jobs` at a time. Needs ground truth.
GridSummary run_grid(const MultiViewDataset& dataset, const RunOptions& base, const std::vector<double>& grid,
                     const std::vector<std::uint64_t>& seeds, int jobs);

/// Exit codes: 0 success, 1 solver failure, 2 usage or input error.
int run(int argc, char** argv);

}  // namespace mvc::cli
