#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvc/linalg.hpp"

namespace mvc {

enum class DatasetKind { Features, Graphs };

DatasetKind parse_dataset_kind(std::string_view name);
std::string_view dataset_kind_name(DatasetKind kind);

struct MultiViewDataset {
    std::string name;
    DatasetKind kind = DatasetKind::Graphs;
    /// Feature views are N x d_v; graph views are N x N.
    std::vector<Matrix> views;
    std::optional<std::vector<int>> truth;
    int clusters = 0;

    Eigen::Index samples() const { return views.empty() ? 0 : views.front().rows(); }
    int view_count() const { return static_cast<int>(views.size()); }

    /// Throws InvalidInput on inconsistent N, non-square graph views, or a
    /// truth vector of the wrong length.
    void validate() const;

    /// The ground truth, or InvalidInput when the dataset has none.
    const std::vector<int>& require_truth() const;
};

/// Off-block noise level for one pair of blocks in one view. Applies to both
/// rectangles (a, b) and (b, a).
struct PairNoise {
    int view = 0;
    int a = 0;
    int b = 0;
    double e = 0.0;
};

struct BlockToyParams {
    std::vector<int> block_sizes{30, 30, 30};
    std::vector<double> base_noise{0.6, 0.7};  ///< one per view
    std::vector<PairNoise> overrides{{0, 0, 1, 0.8}, {0, 1, 2, 1.0}};
    std::uint64_t seed = 0;

    /// View 1: e = 0.6 with 0.8 between blocks 1-2 and 1.0 between blocks 2-3;
    /// view 2: e = 0.7.
    static BlockToyParams standard(std::uint64_t seed);
    /// Alternative noise levels: view 1 at e = 0.6 with 0.8
    /// between blocks 1-2 only.
    static BlockToyParams caption_variant(std::uint64_t seed);
};

/// Block-diagonal affinity views. In-block entries (diagonal included) are
/// uniform(0, 1), off-block entries uniform(0, e); rows are then scaled to
/// sum to 1. Truth is the block index.
MultiViewDataset gen_block_toy(const BlockToyParams& params);

struct GaussianParams {
    int n_per_cluster = 50;
    int clusters = 2;
    std::vector<double> separation{4.0, 1.5};  ///< distance between cluster centers, per view
    std::vector<double> noise{1.0, 1.0};       ///< isotropic standard deviation, per view
    std::uint64_t seed = 0;
    /// Every view draws from the same random stream, so views with equal
    /// parameters are identical.
    bool shared_stream = false;
};

/// Feature views of Gaussian blobs. Cluster c is centered at
/// (separation / sqrt 2) e_c in max(C, 2) dimensions, so all centers are
/// `separation` apart. Samples are ordered by cluster.
MultiViewDataset gen_two_view_gaussian(const GaussianParams& params);

/// Writes manifest.txt, view_<v>.txt (1-based) and truth.txt into `dir` and
/// returns the manifest path.
std::filesystem::path save_dataset(const MultiViewDataset& dataset, const std::filesystem::path& dir);

/// Reads a manifest with keys kind=, clusters=, view= (repeated, in order)
/// and optional truth=. Relative paths resolve against the manifest's
/// directory. Throws LoadError naming the file and line on any problem.
MultiViewDataset load_dataset(const std::filesystem::path& manifest);

Matrix read_matrix(const std::filesystem::path& path);
void write_matrix(const Matrix& m, const std::filesystem::path& path);
std::vector<int> read_labels(const std::filesystem::path& path);
void write_labels(const std::vector<int>& labels, const std::filesystem::path& path);

}  // namespace mvc
