#include "mvc/data.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mvc/error.hpp"
#include "mvc/random.hpp"

namespace mvc {

namespace fs = std::filesystem;

DatasetKind parse_dataset_kind(std::string_view name) {
    if (name == "features") return DatasetKind::Features;
    if (name == "graphs") return DatasetKind::Graphs;
    throw InvalidInput("unknown dataset kind '" + std::string(name) + "' (expected features or graphs)");
}

std::string_view dataset_kind_name(DatasetKind kind) {
    return kind == DatasetKind::Features ? "features" : "graphs";
}

void MultiViewDataset::validate() const {
    if (views.empty()) throw InvalidInput("dataset '" + name + "' has no views");
    const Eigen::Index n = samples();
    for (std::size_t v = 0; v < views.size(); ++v) {
        if (views[v].rows() != n) {
            throw InvalidInput("view " + std::to_string(v + 1) + " has " + std::to_string(views[v].rows()) +
                               " samples but view 1 has " + std::to_string(n));
        }
        if (kind == DatasetKind::Graphs && views[v].cols() != n) {
            throw InvalidInput("graph view " + std::to_string(v + 1) + " is not square");
        }
    }
    if (truth && static_cast<Eigen::Index>(truth->size()) != n) {
        throw InvalidInput("truth has " + std::to_string(truth->size()) + " labels but the views have " +
                           std::to_string(n) + " samples");
    }
}

const std::vector<int>& MultiViewDataset::require_truth() const {
    if (!truth) throw InvalidInput("dataset '" + name + "' has no ground-truth labels");
    return *truth;
}

BlockToyParams BlockToyParams::standard(std::uint64_t seed) {
    BlockToyParams p;
    p.seed = seed;
    return p;
}

BlockToyParams BlockToyParams::caption_variant(std::uint64_t seed) {
    BlockToyParams p;
    p.overrides = {{0, 0, 1, 0.8}};
    p.seed = seed;
    return p;
}

MultiViewDataset gen_block_toy(const BlockToyParams& params) {
    const int blocks = static_cast<int>(params.block_sizes.size());
    const int views = static_cast<int>(params.base_noise.size());
    if (blocks < 1 || views < 1) throw InvalidInput("block toy: need at least one block and one view");
    std::vector<int> offset{0};
    for (int size : params.block_sizes) {
        if (size < 1) throw InvalidInput("block toy: block sizes must be positive");
        offset.push_back(offset.back() + size);
    }
    for (const PairNoise& o : params.overrides) {
        if (o.view < 0 || o.view >= views || o.a < 0 || o.a >= blocks || o.b < 0 || o.b >= blocks || o.a == o.b)
            throw InvalidInput("block toy: noise override refers to a missing view or block pair");
    }
    const int n = offset.back();

    MultiViewDataset ds;
    ds.name = "block-toy";
    ds.kind = DatasetKind::Graphs;
    ds.clusters = blocks;
    ds.truth.emplace();
    for (int b = 0; b < blocks; ++b) ds.truth->insert(ds.truth->end(), params.block_sizes[b], b);

    Rng rng(params.seed);
    for (int v = 0; v < views; ++v) {
        Matrix level = Matrix::Constant(blocks, blocks, params.base_noise[v]);
        level.diagonal().setOnes();
        for (const PairNoise& o : params.overrides) {
            if (o.view != v) continue;
            level(o.a, o.b) = o.e;
            level(o.b, o.a) = o.e;
        }
        Matrix a(n, n);
        for (int bi = 0; bi < blocks; ++bi)
            for (int bj = 0; bj < blocks; ++bj)
                for (int i = offset[bi]; i < offset[bi + 1]; ++i)
                    for (int j = offset[bj]; j < offset[bj + 1]; ++j) a(i, j) = rng.uniform(0.0, level(bi, bj));
        for (int i = 0; i < n; ++i) a.row(i) /= a.row(i).sum();
        ds.views.push_back(std::move(a));
    }
    return ds;
}

MultiViewDataset gen_two_view_gaussian(const GaussianParams& params) {
    if (params.n_per_cluster < 1 || params.clusters < 1) throw InvalidInput("gaussian: sizes must be positive");
    if (params.separation.size() != params.noise.size() || params.separation.empty())
        throw InvalidInput("gaussian: separation and noise need one value per view");
    const int dim = std::max(params.clusters, 2);
    const int n = params.n_per_cluster * params.clusters;

    MultiViewDataset ds;
    ds.name = "gaussian";
    ds.kind = DatasetKind::Features;
    ds.clusters = params.clusters;
    ds.truth.emplace();
    for (int c = 0; c < params.clusters; ++c) ds.truth->insert(ds.truth->end(), params.n_per_cluster, c);

    for (std::size_t v = 0; v < params.separation.size(); ++v) {
        Rng rng(params.seed + (params.shared_stream ? 0 : 7919ULL * (v + 1)));
        const double scale = params.separation[v] / std::sqrt(2.0);
        Matrix x(n, dim);
        for (int i = 0; i < n; ++i) {
            for (int d = 0; d < dim; ++d) x(i, d) = params.noise[v] * rng.normal();
            x(i, (*ds.truth)[i]) += scale;
        }
        ds.views.push_back(std::move(x));
    }
    return ds;
}

namespace {

[[noreturn]] void load_fail(const fs::path& file, int line, const std::string& message) {
    throw LoadError(file.string() + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message);
}

std::ifstream open_for_read(const fs::path& path) {
    std::ifstream in(path);
    if (!in) load_fail(path, 0, "cannot open file");
    return in;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

Matrix read_matrix(const fs::path& path) {
    std::ifstream in = open_for_read(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string text = trim(line);
        if (text.empty()) continue;
        std::vector<double> row;
        const char* p = text.data();
        const char* end = p + text.size();
        while (p < end) {
            while (p < end && (*p == ' ' || *p == '\t')) ++p;
            if (p == end) break;
            double value = 0.0;
            auto [next, ec] = std::from_chars(p, end, value);
            if (ec != std::errc() || (next < end && *next != ' ' && *next != '\t')) {
                load_fail(path, lineno, "malformed number in column " + std::to_string(row.size() + 1));
            }
            if (!std::isfinite(value)) load_fail(path, lineno, "non-finite value");
            row.push_back(value);
            p = next;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            load_fail(path, lineno,
                      "row has " + std::to_string(row.size()) + " values, expected " +
                          std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) load_fail(path, 0, "matrix file is empty");
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

void write_matrix(const Matrix& m, const fs::path& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw LoadError(path.string() + ": cannot write file");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) std::fprintf(f, j ? " %.17g" : "%.17g", m(i, j));
        std::fputc('\n', f);
    }
    if (std::fclose(f) != 0) throw LoadError(path.string() + ": write failed");
}

std::vector<int> read_labels(const fs::path& path) {
    std::ifstream in = open_for_read(path);
    std::vector<int> labels;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string text = trim(line);
        if (text.empty()) continue;
        int value = 0;
        auto [next, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || next != text.data() + text.size()) load_fail(path, lineno, "expected one integer label");
        if (value < 0) load_fail(path, lineno, "labels must be nonnegative");
        labels.push_back(value);
    }
    if (labels.empty()) load_fail(path, 0, "label file is empty");
    return labels;
}

void write_labels(const std::vector<int>& labels, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw LoadError(path.string() + ": cannot write file");
    for (int label : labels) out << label << '\n';
}

fs::path save_dataset(const MultiViewDataset& dataset, const fs::path& dir) {
    dataset.validate();
    fs::create_directories(dir);
    std::ostringstream manifest;
    manifest << "kind=" << dataset_kind_name(dataset.kind) << '\n';
    manifest << "clusters=" << dataset.clusters << '\n';
    for (int v = 0; v < dataset.view_count(); ++v) {
        const std::string file = "view_" + std::to_string(v + 1) + ".txt";
        write_matrix(dataset.views[v], dir / file);
        manifest << "view=" << file << '\n';
    }
    if (dataset.truth) {
        write_labels(*dataset.truth, dir / "truth.txt");
        manifest << "truth=truth.txt\n";
    }
    const fs::path path = dir / "manifest.txt";
    std::ofstream out(path);
    if (!out) throw LoadError(path.string() + ": cannot write file");
    out << manifest.str();
    return path;
}

MultiViewDataset load_dataset(const fs::path& manifest) {
    std::ifstream in = open_for_read(manifest);
    const fs::path base = manifest.parent_path();
    auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };

    MultiViewDataset ds;
    ds.name = base.filename().string();
    bool have_kind = false;
    bool have_clusters = false;
    std::vector<fs::path> view_paths;
    std::optional<fs::path> truth_path;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) load_fail(manifest, lineno, "expected key=value");
        const std::string key = trim(std::string_view(text).substr(0, eq));
        const std::string value = trim(std::string_view(text).substr(eq + 1));
        if (value.empty()) load_fail(manifest, lineno, "empty value for '" + key + "'");
        if (key == "kind") {
            try {
                ds.kind = parse_dataset_kind(value);
            } catch (const InvalidInput& e) {
                load_fail(manifest, lineno, e.what());
            }
            have_kind = true;
        } else if (key == "clusters") {
            auto [next, ec] = std::from_chars(value.data(), value.data() + value.size(), ds.clusters);
            if (ec != std::errc() || next != value.data() + value.size() || ds.clusters < 1)
                load_fail(manifest, lineno, "clusters must be a positive integer");
            have_clusters = true;
        } else if (key == "view") {
            view_paths.push_back(resolve(value));
        } else if (key == "truth") {
            truth_path = resolve(value);
        } else {
            load_fail(manifest, lineno, "unknown key '" + key + "'");
        }
    }
    if (!have_kind) load_fail(manifest, 0, "missing kind=");
    if (!have_clusters) load_fail(manifest, 0, "missing clusters=");
    if (view_paths.empty()) load_fail(manifest, 0, "no view= entries");

    for (const fs::path& p : view_paths) {
        if (!fs::exists(p)) load_fail(p, 0, "view file does not exist");
        Matrix m = read_matrix(p);
        if (ds.kind == DatasetKind::Graphs && m.rows() != m.cols()) {
            load_fail(p, 0,
                      "graph view is " + std::to_string(m.rows()) + " x " + std::to_string(m.cols()) +
                          ", expected square");
        }
        if (!ds.views.empty() && m.rows() != ds.samples()) {
            load_fail(p, 0,
                      "view has N = " + std::to_string(m.rows()) + " but " + view_paths.front().string() +
                          " has N = " + std::to_string(ds.samples()));
        }
        ds.views.push_back(std::move(m));
    }
    if (truth_path) {
        std::vector<int> labels = read_labels(*truth_path);
        if (static_cast<Eigen::Index>(labels.size()) != ds.samples()) {
            load_fail(*truth_path, 0,
                      "truth has " + std::to_string(labels.size()) + " labels but the views have N = " +
                          std::to_string(ds.samples()));
        }
        ds.truth = std::move(labels);
    }
    return ds;
}

}  // namespace mvc
